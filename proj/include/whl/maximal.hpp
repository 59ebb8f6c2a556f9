#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "whl/grid.hpp"

namespace whl {

/**
 * A dyadically translated cell set {x ∔ t : x in base, t in shifts}, materialized
 * by XOR over cell indices. Shifts are cell representatives, so a shift by a
 * digit finer than the grid must be resolved by the caller (it acts as identity).
 */
class TranslateSet {
public:
    static TranslateSet sumset(unsigned resolution, std::span<const std::size_t> base,
                               std::span<const std::size_t> shifts);

    /// I_{k,n} ∔ 2^-(j+1), with j < n <= N.
    static TranslateSet shifted_interval(unsigned resolution, unsigned n, std::size_t k, unsigned j);

    /**
     * I_{k,n} ∔ S_{j,i} with j <= i < n <= N, where S_{j,i} is the dyadic interval of
     * length 2^-i containing 2^-(j+1). For i > j that is [2^-(j+1), 2^-(j+1) + 2^-i).
     */
    static TranslateSet shifted_band(unsigned resolution, unsigned n, std::size_t k, unsigned j, unsigned i);

    unsigned resolution() const { return resolution_; }
    /// Sorted, duplicate-free.
    const std::vector<std::size_t>& cells() const { return cells_; }
    double measure() const;
    /// Average of f over the set.
    double average(const GridFunction& f) const;

private:
    TranslateSet(unsigned resolution, std::vector<std::size_t> cells);

    unsigned resolution_;
    std::vector<std::size_t> cells_;
};

/**
 * U_s f(x) = sup_n sum_{j<n} 2^{(j-n)s} |avg of f over I_n(x) ∔ 2^-(j+1)|, over all n >= 0.
 *
 * Levels n <= N are evaluated directly. For n = N + m the interval is a sub-cell, the
 * shifts j < N read neighbouring cells and the shifts j >= N stay inside the cell, so
 *   g(m) = 2^{-ms} A(x) + (1 - 2^{-ms}) |f(x)| / (2^s - 1),
 * A the level-N sum. g is a convex combination moving monotonically from A to
 * |f|/(2^s-1), hence sup_{m>=1} g(m) = max(g(1), |f(x)|/(2^s-1)) and the result is exact.
 * Throws std::domain_error for s <= 0.
 */
GridFunction u_op(const GridFunction& f, double s);

/**
 * V_{alpha,s} f(x) = sup_{n<=N} sum_{j<n} sum_{i=j}^{n-1} 2^{(j-n)alpha} 2^{(j-i)s} |avg over I_n(x) ∔ S_{j,i}|.
 *
 * Levels above N are not included, so this is a pointwise lower bound of the
 * operator over all n. Throws std::domain_error unless alpha, s > 0.
 */
GridFunction v_op(const GridFunction& f, double alpha, double s);

/// chi_{I_{0,n} ∔ 1/2} 2^{n / p_-(I_{0,n} ∔ 1/2)} at the exponent's resolution, 1 <= n <= N.
GridFunction shifted_spike(unsigned n, const VariableExponent& exp);

/// Modular of U_s applied to shifted_spike(n, exp). Growth in n signals unboundedness.
double u_counterexample(unsigned n, const VariableExponent& exp, double s);

/// Modular of V_{alpha,s} applied to shifted_spike(n, exp).
double v_counterexample(unsigned n, const VariableExponent& exp, double alpha, double s);

/// a_{n-1} = 2^{(n-1)/p_-(I_{0,n-1})} (chi_{I_{0,n}} - chi_{I_{1,n}}), 1 <= n <= N.
GridFunction fejer_test_atom(unsigned n, const VariableExponent& exp);

/// |sigma_* a_{n-1}|_{p(.)} for the atom above.
double sigma_counterexample(unsigned n, const VariableExponent& exp);

}  // namespace whl
