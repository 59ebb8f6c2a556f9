#pragma once

#include <limits>
#include <span>
#include <utility>

#include "whl/filtration.hpp"
#include "whl/grid.hpp"

namespace whl {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (p_-, p_+) over a non-empty set of cells. Throws std::domain_error on an empty set.
std::pair<double, double> exponent_bounds(const VariableExponent& exp, std::span<const std::size_t> cells);

struct ConditionReport {
    /// max over atoms A of P(A)^(p_-(A) - p_+(A)); always >= 1.
    double K = 1.0;
    AtomId worst_atom;
};

/// Evaluates the log-type regularity constant of `exp` over every atom of `filt`.
ConditionReport check_condition_log(const VariableExponent& exp, const DyadicFiltration& filt);

/// Cellwise p/(p-1). Throws std::domain_error when some p_i <= 1.
VariableExponent conjugate_exponent(const VariableExponent& exp);

/// 2^-N sum_i (|f_i|/lambda)^p_i. Throws std::domain_error for lambda <= 0.
double modular(const GridFunction& f, const VariableExponent& exp, double lambda);

/**
 * Luxemburg quasi-norm inf{lambda > 0 : modular(f, lambda) <= 1}.
 *
 * Found by geometric bisection between min|f_i| 2^(-N/p_-) (modular >= 1) and
 * max|f_i| (modular <= 1), stopping at relative width 1e-12 or 200 steps.
 * Returns 0 for f == 0.
 */
double lp_norm(const GridFunction& f, const VariableExponent& exp);

/// Norm of the indicator of a cell set.
double indicator_norm(std::span<const std::size_t> cells, const VariableExponent& exp);

/**
 * Dyadic Lorentz quasi-norm:
 *   q < inf : (sum_k 2^(kq) |chi_{|f| > 2^k}|^q)^(1/q)
 *   q = inf : sup_k 2^k |chi_{|f| > 2^k}|
 * over all integers k. Levels below min|f| share one set and are summed in closed form.
 * Throws std::domain_error for q <= 0.
 */
double lorentz_norm(const GridFunction& f, const VariableExponent& exp, double q);

/// Largest integer k with 2^k < x, for x > 0.
int floor_log2_strict(double x);

}  // namespace whl
