#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "whl/grid.hpp"

namespace whl {

// Cell index convention: bit j of x's binary expansion (place value 2^-(j+1)) is
// bit (N-1-j) of the cell index, so the first binary digit is the most significant
// index bit. Dyadic addition is XOR of cell indices.

/// Index mask that flips binary digit j (x ∔ 2^-(j+1)); zero when j >= N since the
/// digit lies inside a single cell.
inline std::size_t digit_mask(unsigned j, unsigned resolution)
{
    return j < resolution ? std::size_t{1} << (resolution - 1 - j) : 0;
}

/// Walsh-Paley function w_n = prod_k r_k^{n_k}. Throws std::out_of_range for n >= 2^N.
GridFunction walsh_function(std::size_t n, unsigned resolution);

/// Coefficients f^(n) = E(f w_n), n = 0..2^N-1.
struct WalshSpectrum {
    unsigned resolution = 0;
    std::vector<double> coefficients;
};

/// Fast Walsh-Hadamard transform in Paley order, O(N 2^N).
WalshSpectrum fwht(const GridFunction& f);
/// f = sum_n f^(n) w_n.
GridFunction ifwht(const WalshSpectrum& spectrum);

/// D_n = sum_{k<n} w_k, 1 <= n <= 2^N.
GridFunction dirichlet_kernel(std::size_t n, unsigned resolution);
/// K_n = (1/n) sum_{k=1}^n D_k, 1 <= n <= 2^N.
GridFunction fejer_kernel(std::size_t n, unsigned resolution);

/// 1/2 (2^-n D_{2^n}(x) + sum_{j=0}^n 2^{j-n} D_{2^n}(x ∔ 2^-(j+1))), 0 <= n <= N; equals K_{2^n}.
GridFunction fejer_dyadic_closed_form(unsigned n, unsigned resolution);

/**
 * Pointwise majorant of |K_n| for 2^{m-1} <= n < 2^m:
 *   sum_{j<m} 2^{j-m} sum_{i=j}^{m-1} (D_{2^i}(x) + D_{2^i}(x ∔ 2^-(j+1))).
 */
GridFunction fejer_kernel_bound(std::size_t n, unsigned resolution);

/// s_n f = sum_{k<n} f^(k) w_k; equals f for n >= 2^N. Throws for n = 0.
GridFunction partial_sum(const GridFunction& f, std::size_t n);

/**
 * sigma_n f = (1/n) sum_{k=1}^n s_k f. For n > 2^N the exact closed form
 * (2^N/n) sigma_{2^N} f + (1 - 2^N/n) f is used.
 */
GridFunction fejer_mean(const GridFunction& f, std::size_t n);

/**
 * sigma_* f = sup_n |sigma_n f|, exactly.
 *
 * For n > 2^N every s_k f with k >= 2^N equals f, so sigma_n f is a convex
 * combination of sigma_{2^N} f and f whose weight on f increases to 1. The tail
 * sup is therefore max(|sigma_{2^N} f|, |f|), and the result is
 * max(max_{n <= 2^N} |sigma_n f|, |f|).
 */
GridFunction fejer_maximal(const GridFunction& f);

/// sup_n |sigma_{2^n} f| over all n >= 0 (the tail again reduces to |f|).
GridFunction fejer_dyadic_maximal(const GridFunction& f);

/// s_n f computed as w_n T_0(f w_n) with the martingale transform T_0 = sum_k n_{k-1} d_k.
GridFunction partial_sum_via_transform(const GridFunction& f, std::size_t n);

/// Dyadic convolution 2^-N sum_t f(t) K(x ∔ t); O(4^N), used for cross-checks.
GridFunction dyadic_convolution(const GridFunction& f, const GridFunction& kernel);

}  // namespace whl
