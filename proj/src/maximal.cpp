#include "whl/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "whl/vspaces.hpp"
#include "whl/walsh.hpp"

namespace whl {

namespace {

std::vector<std::size_t> interval_cells(unsigned resolution, unsigned level, std::size_t k)
{
    const std::size_t width = cell_count(resolution - level);
    std::vector<std::size_t> cells(width);
    std::iota(cells.begin(), cells.end(), k * width);
    return cells;
}

// averages[n][k] = mean of f over I_{k,n}.
std::vector<std::vector<double>> level_averages(const GridFunction& f)
{
    const unsigned res = f.resolution();
    std::vector<std::vector<double>> avg(res + 1);
    avg[res].assign(f.values().begin(), f.values().end());
    for (unsigned n = res; n-- > 0;) {
        avg[n].resize(cell_count(n));
        for (std::size_t k = 0; k < avg[n].size(); ++k) avg[n][k] = 0.5 * (avg[n + 1][2 * k] + avg[n + 1][2 * k + 1]);
    }
    return avg;
}

void require_level(unsigned n, unsigned resolution, const char* what)
{
    if (n < 1 || n > resolution) throw std::out_of_range(std::string(what) + ": level must lie in [1, N]");
}

}  // namespace

TranslateSet::TranslateSet(unsigned resolution, std::vector<std::size_t> cells)
    : resolution_(resolution), cells_(std::move(cells))
{
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

TranslateSet TranslateSet::sumset(unsigned resolution, std::span<const std::size_t> base,
                                  std::span<const std::size_t> shifts)
{
    const std::size_t size = cell_count(resolution);
    std::vector<std::size_t> cells;
    cells.reserve(base.size() * shifts.size());
    for (std::size_t x : base) {
        for (std::size_t t : shifts) {
            if (x >= size || t >= size) throw std::out_of_range("TranslateSet: cell index out of range");
            cells.push_back(x ^ t);
        }
    }
    return TranslateSet(resolution, std::move(cells));
}

TranslateSet TranslateSet::shifted_interval(unsigned resolution, unsigned n, std::size_t k, unsigned j)
{
    if (n > resolution || j >= n || k >= cell_count(n)) throw std::out_of_range("TranslateSet: bad interval shift");
    const std::size_t shift = digit_mask(j, resolution);
    return sumset(resolution, interval_cells(resolution, n, k), std::span<const std::size_t>(&shift, 1));
}

TranslateSet TranslateSet::shifted_band(unsigned resolution, unsigned n, std::size_t k, unsigned j, unsigned i)
{
    if (n > resolution || j > i || i >= n || k >= cell_count(n)) throw std::out_of_range("TranslateSet: bad band shift");
    const std::size_t prefix = i > j ? std::size_t{1} << (i - 1 - j) : 0;
    return sumset(resolution, interval_cells(resolution, n, k), interval_cells(resolution, i, prefix));
}

double TranslateSet::measure() const
{
    return std::ldexp(static_cast<double>(cells_.size()), -static_cast<int>(resolution_));
}

double TranslateSet::average(const GridFunction& f) const
{
    require_same_resolution(f.resolution(), resolution_, "TranslateSet::average");
    if (cells_.empty()) throw std::domain_error("TranslateSet::average: empty set");
    double s = 0.0;
    for (std::size_t c : cells_) s += f[c];
    return s / static_cast<double>(cells_.size());
}

GridFunction u_op(const GridFunction& f, double s)
{
    if (!(s > 0.0)) throw std::domain_error("u_op: s must be positive");
    const unsigned res = f.resolution();
    const auto avg = level_averages(f);
    std::vector<double> best(f.size(), 0.0);

    // I_{k,n} ∔ 2^-(j+1) = I_{k ^ (1 << (n-1-j)), n}
    std::vector<double> level_value;
    for (unsigned n = 1; n <= res; ++n) {
        level_value.assign(cell_count(n), 0.0);
        for (std::size_t k = 0; k < level_value.size(); ++k) {
            double v = 0.0;
            for (unsigned j = 0; j < n; ++j) {
                v += std::exp2((static_cast<double>(j) - n) * s) * std::abs(avg[n][k ^ (std::size_t{1} << (n - 1 - j))]);
            }
            level_value[k] = v;
        }
        const unsigned shift = res - n;
        for (std::size_t x = 0; x < best.size(); ++x) best[x] = std::max(best[x], level_value[x >> shift]);
    }

    // level_value now holds the level-N sums A(x) (empty at N = 0).
    const double decay = std::exp2(-s);
    const double geometric = 1.0 / (std::exp2(s) - 1.0);
    for (std::size_t x = 0; x < best.size(); ++x) {
        const double a = res == 0 ? 0.0 : level_value[x];
        const double limit = std::abs(f[x]) * geometric;
        const double first = decay * a + (1.0 - decay) * limit;
        best[x] = std::max({best[x], first, limit});
    }
    return GridFunction(res, std::move(best));
}

GridFunction v_op(const GridFunction& f, double alpha, double s)
{
    if (!(alpha > 0.0) || !(s > 0.0)) throw std::domain_error("v_op: alpha and s must be positive");
    const unsigned res = f.resolution();
    const auto avg = level_averages(f);
    std::vector<double> best(f.size(), 0.0);

    // I_{k,n} ∔ S_{j,i} = I_{(k >> (n-i)) ^ prefix_{j,i}, i}
    for (unsigned n = 1; n <= res; ++n) {
        const unsigned shift = res - n;
        for (std::size_t k = 0; k < cell_count(n); ++k) {
            double v = 0.0;
            for (unsigned j = 0; j < n; ++j) {
                const double outer = std::exp2((static_cast<double>(j) - n) * alpha);
                for (unsigned i = j; i < n; ++i) {
                    const std::size_t prefix = i > j ? std::size_t{1} << (i - 1 - j) : 0;
                    const double a = avg[i][(k >> (n - i)) ^ prefix];
                    v += outer * std::exp2((static_cast<double>(j) - i) * s) * std::abs(a);
                }
            }
            const std::size_t first = k << shift;
            for (std::size_t x = first; x < first + cell_count(shift); ++x) best[x] = std::max(best[x], v);
        }
    }
    return GridFunction(res, std::move(best));
}

GridFunction shifted_spike(unsigned n, const VariableExponent& exp)
{
    const unsigned res = exp.resolution();
    require_level(n, res, "shifted_spike");
    const auto set = TranslateSet::shifted_interval(res, n, 0, 0);
    const double p_minus = exponent_bounds(exp, set.cells()).first;
    const double height = std::exp2(static_cast<double>(n) / p_minus);
    std::vector<double> v(cell_count(res), 0.0);
    for (std::size_t c : set.cells()) v[c] = height;
    return GridFunction(res, std::move(v));
}

double u_counterexample(unsigned n, const VariableExponent& exp, double s)
{
    return modular(u_op(shifted_spike(n, exp), s), exp, 1.0);
}

double v_counterexample(unsigned n, const VariableExponent& exp, double alpha, double s)
{
    return modular(v_op(shifted_spike(n, exp), alpha, s), exp, 1.0);
}

GridFunction fejer_test_atom(unsigned n, const VariableExponent& exp)
{
    const unsigned res = exp.resolution();
    require_level(n, res, "fejer_test_atom");
    const auto support = interval_cells(res, n - 1, 0);
    const double height = std::exp2(static_cast<double>(n - 1) / exponent_bounds(exp, support).first);
    return height * (GridFunction::dyadic_indicator(res, n, 0) - GridFunction::dyadic_indicator(res, n, 1));
}

double sigma_counterexample(unsigned n, const VariableExponent& exp)
{
    return lp_norm(fejer_maximal(fejer_test_atom(n, exp)), exp);
}

}  // namespace whl
