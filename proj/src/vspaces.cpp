#include "whl/vspaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace whl {

std::pair<double, double> exponent_bounds(const VariableExponent& exp, std::span<const std::size_t> cells)
{
    if (cells.empty()) throw std::domain_error("exponent_bounds: empty cell set");
    double lo = kInfinity;
    double hi = -kInfinity;
    for (std::size_t c : cells) {
        if (c >= exp.size()) throw std::out_of_range("exponent_bounds: cell index out of range");
        lo = std::min(lo, exp[c]);
        hi = std::max(hi, exp[c]);
    }
    return {lo, hi};
}

ConditionReport check_condition_log(const VariableExponent& exp, const DyadicFiltration& filt)
{
    require_same_resolution(exp.resolution(), filt.resolution(), "check_condition_log");
    ConditionReport report;
    for (unsigned n = 0; n <= filt.depth(); ++n) {
        const auto& part = filt.level(n);
        for (std::size_t a = 0; a < part.size(); ++a) {
            const auto [lo, hi] = exponent_bounds(exp, part[a]);
            const double value = std::pow(filt.measure({n, a}), lo - hi);
            if (value > report.K) {
                report.K = value;
                report.worst_atom = {n, a};
            }
        }
    }
    return report;
}

VariableExponent conjugate_exponent(const VariableExponent& exp)
{
    if (exp.p_minus() <= 1.0) throw std::domain_error("conjugate_exponent: requires p_- > 1");
    std::vector<double> v(exp.values().begin(), exp.values().end());
    for (double& p : v) p = p / (p - 1.0);
    return VariableExponent(exp.resolution(), std::move(v));
}

double modular(const GridFunction& f, const VariableExponent& exp, double lambda)
{
    require_same_resolution(f.resolution(), exp.resolution(), "modular");
    if (!(lambda > 0.0)) throw std::domain_error("modular: lambda must be positive");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] != 0.0) sum += std::pow(std::abs(f[i]) / lambda, exp[i]);
    }
    return sum * f.cell_weight();
}

namespace {

struct Term {
    double log_value;
    double p;
};

// Solves modular = 1 over the nonzero terms; `weight` is the cell measure.
double solve_norm(const std::vector<Term>& terms, double weight, double min_abs, double max_abs, double p_minus,
                  unsigned resolution)
{
    auto modular_at = [&](double log_lambda) {
        double s = 0.0;
        for (const Term& t : terms) s += std::exp(t.p * (t.log_value - log_lambda));
        return s * weight;
    };

    double lo = std::max(1e-300, min_abs * std::exp2(-static_cast<double>(resolution) / p_minus));
    double hi = max_abs;
    double log_lo = std::log(lo);
    double log_hi = std::log(hi);
    if (modular_at(log_hi) >= 1.0) return hi;
    for (int iter = 0; iter < 200 && log_hi - log_lo > 1e-12; ++iter) {
        const double mid = 0.5 * (log_lo + log_hi);
        if (modular_at(mid) > 1.0) {
            log_lo = mid;
        } else {
            log_hi = mid;
        }
    }
    return std::exp(0.5 * (log_lo + log_hi));
}

}  // namespace

double lp_norm(const GridFunction& f, const VariableExponent& exp)
{
    require_same_resolution(f.resolution(), exp.resolution(), "lp_norm");
    std::vector<Term> terms;
    double min_abs = kInfinity;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(f[i]);
        if (a == 0.0) continue;
        terms.push_back({std::log(a), exp[i]});
        min_abs = std::min(min_abs, a);
        max_abs = std::max(max_abs, a);
    }
    if (terms.empty()) return 0.0;
    return solve_norm(terms, f.cell_weight(), min_abs, max_abs, exp.p_minus(), f.resolution());
}

double indicator_norm(std::span<const std::size_t> cells, const VariableExponent& exp)
{
    if (cells.empty()) return 0.0;
    std::vector<Term> terms;
    terms.reserve(cells.size());
    for (std::size_t c : cells) terms.push_back({0.0, exp[c]});
    const double weight = std::ldexp(1.0, -static_cast<int>(exp.resolution()));
    return solve_norm(terms, weight, 1.0, 1.0, exp.p_minus(), exp.resolution());
}

int floor_log2_strict(double x)
{
    int e = 0;
    const double m = std::frexp(x, &e);  // x = m 2^e, m in [1/2, 1)
    return m == 0.5 ? e - 2 : e - 1;
}

double lorentz_norm(const GridFunction& f, const VariableExponent& exp, double q)
{
    require_same_resolution(f.resolution(), exp.resolution(), "lorentz_norm");
    if (!(q > 0.0)) throw std::domain_error("lorentz_norm: q must be positive");

    // Cell i lies in {|f| > 2^k} exactly when k <= level[i].
    struct Cell {
        int level;
        std::size_t index;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] != 0.0) cells.push_back({floor_log2_strict(std::abs(f[i])), i});
    }
    if (cells.empty()) return 0.0;
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.level > b.level || (a.level == b.level && a.index < b.index); });

    const bool sup = std::isinf(q);
    double total = 0.0;
    std::vector<std::size_t> set;
    std::size_t pos = 0;
    while (pos < cells.size()) {
        // Run of k in (next_level, level] shares the level set {level_i >= level}.
        const int level = cells[pos].level;
        while (pos < cells.size() && cells[pos].level == level) set.push_back(cells[pos++].index);
        const double chi = indicator_norm(set, exp);
        if (sup) {
            total = std::max(total, std::ldexp(chi, level));
            continue;
        }
        const double top = std::pow(std::ldexp(chi, level), q);
        if (pos == cells.size()) {
            total += top / (1.0 - std::exp2(-q));
        } else {
            const int run = level - cells[pos].level;
            total += top * (1.0 - std::exp2(-q * run)) / (1.0 - std::exp2(-q));
        }
    }
    return sup ? total : std::pow(total, 1.0 / q);
}

}  // namespace whl
