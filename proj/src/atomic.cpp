#include "whl/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "whl/vspaces.hpp"

namespace whl {

std::string_view to_string(AtomKind kind)
{
    switch (kind) {
    case AtomKind::CondSquare:
        return "s";
    case AtomKind::Square:
        return "S";
    case AtomKind::Maximal:
        return "M";
    }
    return "?";
}

AtomKind parse_atom_kind(std::string_view name)
{
    if (name == "s" || name == "1") return AtomKind::CondSquare;
    if (name == "S" || name == "2") return AtomKind::Square;
    if (name == "M" || name == "3") return AtomKind::Maximal;
    throw std::invalid_argument("unknown atom kind '" + std::string(name) + "' (expected s, S or M)");
}

namespace {

// gov[n][x]: the adapted sequence whose threshold crossings define the stopping times.
// For s it is s_{n+1}(f) (F_n-measurable); for S and M it is S_n(f) and |f_n|.
std::vector<GridFunction> governing_sequence(const Martingale& m, AtomKind kind)
{
    std::vector<GridFunction> gov;
    for (unsigned n = 0; n <= m.depth(); ++n) {
        switch (kind) {
        case AtomKind::CondSquare:
            gov.push_back(cond_square_function(m, n + 1));
            break;
        case AtomKind::Square:
            gov.push_back(square_function(m, n));
            break;
        case AtomKind::Maximal:
            gov.push_back(m.level(n).abs());
            break;
        }
    }
    return gov;
}

std::vector<int> first_crossing(const std::vector<GridFunction>& gov, double threshold)
{
    const std::size_t cells = gov.front().size();
    std::vector<int> tau(cells, StoppingTime::kNever);
    for (std::size_t x = 0; x < cells; ++x) {
        for (std::size_t n = 0; n < gov.size(); ++n) {
            if (gov[n][x] > threshold) {
                tau[x] = static_cast<int>(n);
                break;
            }
        }
    }
    return tau;
}

// tau(x) = inf{n : x in F_{n+1}}, F_j = union of level-(j-1) atoms meeting {rho = j}.
std::vector<int> predictable_envelope(const DyadicFiltration& filt, const std::vector<int>& rho)
{
    const unsigned depth = filt.depth();
    std::vector<int> tau(rho.size(), StoppingTime::kNever);
    for (unsigned j = 1; j <= depth; ++j) {
        std::vector<char> marked(filt.level(j - 1).size(), 0);
        for (std::size_t x = 0; x < rho.size(); ++x) {
            if (rho[x] == static_cast<int>(j)) marked[filt.atom_of(j - 1, x)] = 1;
        }
        for (std::size_t x = 0; x < rho.size(); ++x) {
            if (tau[x] == StoppingTime::kNever && marked[filt.atom_of(j - 1, x)]) tau[x] = static_cast<int>(j) - 1;
        }
    }
    // {rho = 0} is F_0-measurable; it can only be all of Omega, which stops at 0.
    for (std::size_t x = 0; x < rho.size(); ++x) {
        if (rho[x] == 0) tau[x] = 0;
    }
    return tau;
}

}  // namespace

AtomBundle decompose(const Martingale& m, const VariableExponent& exp, AtomKind kind, double max_regularity)
{
    require_same_resolution(exp.resolution(), m.terminal().resolution(), "decompose");
    const auto& filt = m.filtration();
    if (kind != AtomKind::CondSquare) {
        const double r = regularity_constant(filt);
        if (r > max_regularity) {
            throw std::domain_error("decompose: filtration regularity " + std::to_string(r) + " exceeds "
                                    + std::to_string(max_regularity));
        }
    }

    AtomBundle bundle{kind, exp, m.level(0)[0], {}};
    const GridFunction centered = m.terminal() - GridFunction::constant(m.terminal().resolution(), bundle.mean);
    const Martingale g(m.filtration_ptr(), centered);
    if (centered.is_zero()) return bundle;

    const auto gov = governing_sequence(g, kind);
    double lo = kInfinity;
    double hi = 0.0;
    for (const auto& level : gov) {
        for (double v : level.values()) {
            if (v > 0.0) lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const int k_lo = static_cast<int>(std::floor(std::log2(lo))) - 1;
    const int k_hi = static_cast<int>(std::ceil(std::log2(hi)));

    auto stopping_time = [&](int k) {
        std::vector<int> rho = first_crossing(gov, std::ldexp(1.0, k));
        if (kind != AtomKind::CondSquare) rho = predictable_envelope(filt, rho);
        return StoppingTime(filt, std::move(rho));
    };

    StoppingTime current = stopping_time(k_lo);
    Martingale stopped = stopped_martingale(g, current);
    for (int k = k_lo; k < k_hi; ++k) {
        StoppingTime next = stopping_time(k + 1);
        Martingale next_stopped = stopped_martingale(g, next);
        const GridFunction diff = next_stopped.terminal() - stopped.terminal();
        if (!diff.is_zero()) {
            const auto cells = current.finite_cells();
            const double mu = 3.0 * std::ldexp(1.0, k) * indicator_norm(cells, exp);
            bundle.entries.push_back({k, mu, current, Martingale(m.filtration_ptr(), (1.0 / mu) * diff)});
        }
        current = std::move(next);
        stopped = std::move(next_stopped);
    }
    return bundle;
}

GridFunction AtomBundle::partial_sum(int first, int last) const
{
    const unsigned res = exponent.resolution();
    std::vector<double> out(cell_count(res), mean);
    for (const auto& e : entries) {
        if (e.k < first || e.k > last) continue;
        const auto& a = e.atom.terminal();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += e.mu * a[i];
    }
    return GridFunction(res, std::move(out));
}

GridFunction AtomBundle::reconstruct() const
{
    return partial_sum(std::numeric_limits<int>::min(), std::numeric_limits<int>::max());
}

AtomCheck verify_atom(const Martingale& a, const StoppingTime& tau, const VariableExponent& exp, AtomKind kind)
{
    require_same_resolution(exp.resolution(), a.terminal().resolution(), "verify_atom");
    if (tau.size() != a.terminal().size()) throw std::invalid_argument("verify_atom: size mismatch");

    AtomCheck check;
    for (std::size_t x = 0; x < tau.size(); ++x) {
        const unsigned last = tau.is_finite(x) ? static_cast<unsigned>(tau[x]) : a.depth();
        for (unsigned n = 0; n <= std::min(last, a.depth()); ++n) {
            check.vanishing_residual = std::max(check.vanishing_residual, std::abs(a.level(n)[x]));
        }
    }

    GridFunction size;
    switch (kind) {
    case AtomKind::CondSquare:
        size = cond_square_function(a);
        break;
    case AtomKind::Square:
        size = square_function(a);
        break;
    case AtomKind::Maximal:
        size = doob_maximal(a);
        break;
    }
    const double chi = indicator_norm(tau.finite_cells(), exp);
    const double bound = chi > 0.0 ? 1.0 / chi : kInfinity;
    check.bound_slack = bound - size.sup_norm();
    check.passed = check.vanishing_residual <= 1e-9 && check.bound_slack >= -1e-9;
    return check;
}

double atomic_norm(const AtomBundle& bundle, AtomicNormMode mode)
{
    if (mode.kind == AtomicNormMode::Kind::Sequence) {
        const double q = mode.param;
        if (!(q > 0.0)) throw std::domain_error("atomic_norm: q must be positive");
        double acc = 0.0;
        for (const auto& e : bundle.entries) acc = std::isinf(q) ? std::max(acc, e.mu) : acc + std::pow(e.mu, q);
        return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
    }

    const double t = mode.param;
    if (!(t > 0.0) || !(t < bundle.exponent.underline_p())) {
        throw std::domain_error("atomic_norm: t must lie in (0, underline p)");
    }
    const unsigned res = bundle.exponent.resolution();
    std::vector<double> acc(cell_count(res), 0.0);
    for (const auto& e : bundle.entries) {
        const auto cells = e.tau.finite_cells();
        const double chi = indicator_norm(cells, bundle.exponent);
        if (chi == 0.0) continue;
        const double term = std::pow(e.mu / chi, t);
        for (std::size_t c : cells) acc[c] += term;
    }
    for (double& v : acc) v = std::pow(v, 1.0 / t);
    return lp_norm(GridFunction(res, std::move(acc)), bundle.exponent);
}

}  // namespace whl
