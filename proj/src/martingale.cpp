#include "whl/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace whl {

GridFunction cond_expectation(const GridFunction& f, const DyadicFiltration& filt, unsigned n)
{
    require_same_resolution(f.resolution(), filt.resolution(), "cond_expectation");
    if (n > filt.depth()) throw std::out_of_range("cond_expectation: level out of range");
    std::vector<double> out(f.size());
    if (filt.is_dyadic()) {
        const std::size_t width = cell_count(filt.resolution() - n);
        for (std::size_t start = 0; start < f.size(); start += width) {
            double s = 0.0;
            for (std::size_t c = start; c < start + width; ++c) s += f[c];
            s /= static_cast<double>(width);
            std::fill(out.begin() + static_cast<std::ptrdiff_t>(start),
                      out.begin() + static_cast<std::ptrdiff_t>(start + width), s);
        }
    } else {
        for (const auto& atom : filt.level(n)) {
            double s = 0.0;
            for (std::size_t c : atom) s += f[c];
            s /= static_cast<double>(atom.size());
            for (std::size_t c : atom) out[c] = s;
        }
    }
    return GridFunction(f.resolution(), std::move(out));
}

Martingale::Martingale(FiltrationPtr filtration, GridFunction terminal)
    : filtration_(std::move(filtration))
{
    if (!filtration_) throw std::invalid_argument("Martingale: null filtration");
    require_same_resolution(terminal.resolution(), filtration_->resolution(), "Martingale");
    const unsigned depth = filtration_->depth();
    levels_.reserve(depth + 1);
    for (unsigned n = 0; n < depth; ++n) levels_.push_back(cond_expectation(terminal, *filtration_, n));
    levels_.push_back(std::move(terminal));
}

const GridFunction& Martingale::level(unsigned n) const
{
    return levels_[std::min<std::size_t>(n, levels_.size() - 1)];
}

GridFunction Martingale::difference(unsigned n) const
{
    if (n == 0) return levels_.front();
    if (n > depth()) return GridFunction(terminal().resolution());
    return levels_[n] - levels_[n - 1];
}

GridFunction doob_maximal(const Martingale& m, std::optional<unsigned> upto)
{
    const unsigned last = std::min(upto.value_or(m.depth()), m.depth());
    std::vector<double> out(m.terminal().size(), 0.0);
    for (unsigned n = 0; n <= last; ++n) {
        const auto& fn = m.level(n);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], std::abs(fn[i]));
    }
    return GridFunction(m.terminal().resolution(), std::move(out));
}

GridFunction square_function(const Martingale& m, std::optional<unsigned> upto)
{
    const unsigned last = std::min(upto.value_or(m.depth()), m.depth());
    std::vector<double> sum(m.terminal().size(), 0.0);
    for (unsigned n = 0; n <= last; ++n) {
        const GridFunction d = m.difference(n);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += d[i] * d[i];
    }
    for (double& v : sum) v = std::sqrt(v);
    return GridFunction(m.terminal().resolution(), std::move(sum));
}

GridFunction cond_square_function(const Martingale& m, std::optional<unsigned> upto)
{
    const unsigned last = std::min(upto.value_or(m.depth()), m.depth());
    const auto& filt = m.filtration();
    std::vector<double> sum(m.terminal().size(), 0.0);
    for (unsigned n = 0; n <= last; ++n) {
        const GridFunction d = m.difference(n);
        const GridFunction sq = d * d;
        const GridFunction cond = cond_expectation(sq, filt, n == 0 ? 0 : n - 1);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += cond[i];
    }
    for (double& v : sum) v = std::sqrt(v);
    return GridFunction(m.terminal().resolution(), std::move(sum));
}

StoppingTime::StoppingTime(const DyadicFiltration& filt, std::vector<int> values)
    : values_(std::move(values))
{
    if (values_.size() != filt.cell_count()) throw std::invalid_argument("StoppingTime: size mismatch");
    const int depth = static_cast<int>(filt.depth());
    for (int v : values_) {
        if (v != kNever && (v < 0 || v > depth)) {
            throw std::domain_error("StoppingTime: value " + std::to_string(v) + " outside {0..N, inf}");
        }
    }
    for (unsigned n = 0; n <= filt.depth(); ++n) {
        for (const auto& atom : filt.level(n)) {
            const bool first = values_[atom.front()] == static_cast<int>(n);
            for (std::size_t c : atom) {
                if ((values_[c] == static_cast<int>(n)) != first) {
                    throw std::domain_error("StoppingTime: {tau = " + std::to_string(n)
                                            + "} is not a union of level-" + std::to_string(n) + " atoms");
                }
            }
        }
    }
}

StoppingTime StoppingTime::constant(const DyadicFiltration& filt, int value)
{
    return StoppingTime(filt, std::vector<int>(filt.cell_count(), value));
}

std::vector<std::size_t> StoppingTime::finite_cells() const
{
    std::vector<std::size_t> cells;
    for (std::size_t c = 0; c < values_.size(); ++c) {
        if (values_[c] != kNever) cells.push_back(c);
    }
    return cells;
}

Martingale stopped_martingale(const Martingale& m, const StoppingTime& tau)
{
    if (tau.size() != m.terminal().size()) throw std::domain_error("stopped_martingale: size mismatch");
    const unsigned depth = m.depth();
    std::vector<double> out(tau.size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        const unsigned stop = tau.is_finite(c) ? std::min<unsigned>(static_cast<unsigned>(tau[c]), depth) : depth;
        out[c] = m.level(stop)[c];
    }
    return Martingale(m.filtration_ptr(), GridFunction(m.terminal().resolution(), std::move(out)));
}

namespace {

GridFunction power_sum_impl(const std::vector<GridFunction>& terms, double r)
{
    if (terms.empty()) throw std::domain_error("power_sum: no terms");
    if (!(r >= 1.0)) throw std::domain_error("power_sum: r must be >= 1");
    std::vector<double> acc(terms.front().size(), 0.0);
    for (const auto& t : terms) {
        require_same_resolution(t.resolution(), terms.front().resolution(), "power_sum");
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += r == 1.0 ? std::abs(t[i]) : std::pow(std::abs(t[i]), r);
    }
    if (r != 1.0) {
        for (double& v : acc) v = std::pow(v, 1.0 / r);
    }
    return GridFunction(terms.front().resolution(), std::move(acc));
}

}  // namespace

GridFunction conditional_sum(const std::vector<GridFunction>& thetas, const DyadicFiltration& filt, double r)
{
    if (thetas.size() > filt.depth() + 1) throw std::domain_error("conditional_sum: more terms than levels");
    std::vector<GridFunction> cond;
    cond.reserve(thetas.size());
    for (unsigned n = 0; n < thetas.size(); ++n) cond.push_back(cond_expectation(thetas[n], filt, n));
    return power_sum_impl(cond, r);
}

GridFunction power_sum(const std::vector<GridFunction>& thetas, double r)
{
    return power_sum_impl(thetas, r);
}

bool is_measurable(const GridFunction& g, const DyadicFiltration& filt, unsigned n)
{
    for (const auto& atom : filt.level(n)) {
        const double v = g[atom.front()];
        for (std::size_t c : atom) {
            if (g[c] != v) return false;
        }
    }
    return true;
}

Martingale martingale_transform(const Martingale& m, const std::vector<GridFunction>& multipliers)
{
    const unsigned depth = m.depth();
    if (multipliers.size() != depth) {
        throw std::domain_error("martingale_transform: expected " + std::to_string(depth) + " multipliers");
    }
    std::vector<double> out(m.terminal().size(), 0.0);
    for (unsigned k = 1; k <= depth; ++k) {
        const GridFunction& b = multipliers[k - 1];
        require_same_resolution(b.resolution(), m.terminal().resolution(), "martingale_transform");
        if (b.sup_norm() > 1.0) throw std::domain_error("martingale_transform: |b| exceeds 1");
        if (!is_measurable(b, m.filtration(), k - 1)) {
            throw std::domain_error("martingale_transform: b_" + std::to_string(k - 1) + " is not F_"
                                    + std::to_string(k - 1) + "-measurable");
        }
        const GridFunction d = m.difference(k);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i] * d[i];
    }
    return Martingale(m.filtration_ptr(), GridFunction(m.terminal().resolution(), std::move(out)));
}

}  // namespace whl
