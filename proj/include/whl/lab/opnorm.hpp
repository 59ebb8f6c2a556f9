#pragma once

#include <string_view>
#include <vector>

#include "whl/grid.hpp"
#include "whl/lab/report.hpp"

namespace whl::lab {

enum class Operator {
    Identity,
    Doob,            // M
    Square,          // S
    CondSquare,      // s
    FejerMax,        // sigma_*
    FejerDyadicMax,  // sup_n |sigma_{2^n}|
    U,               // U_s
    V,               // V_{alpha,s}
    Transform,       // T_b with b_{k-1} = (-1)^{k-1}
    PartialSumSup,   // sup_n |s_n f|_{p(.)}, a norm-level supremum
};

/// "identity", "M", "S", "s", "sigma*", "sigma2n-max", "U", "V", "T_b", "sn-sup".
std::string_view to_string(Operator op);
Operator parse_operator(std::string_view name);

struct OperatorSpec {
    Operator op = Operator::Identity;
    double s = 1.0;
    double alpha = 1.0;
};

/// Pointwise image T f on the dyadic filtration. Throws std::invalid_argument for PartialSumSup.
GridFunction apply_operator(const OperatorSpec& spec, const GridFunction& f);

struct NormSpec {
    /// Numerator: L_{p(.)} or, when set, the Lorentz L_{p(.),q} quasi-norm.
    bool lorentz = false;
    double q = 0.0;
    /// Denominator: |f|_{p(.)} or the L_{p(.)} norm of M f, S f or s f (Hardy norms).
    enum class Denominator { Function, HardyM, HardyS, HardyCond } denominator = Denominator::Function;
};

std::string_view to_string(NormSpec::Denominator d);
/// "function", "H-M", "H-S", "H-s".
NormSpec::Denominator parse_denominator(std::string_view name);

double numerator_norm(const GridFunction& g, const VariableExponent& exp, const NormSpec& norm);
double denominator_norm(const GridFunction& f, const VariableExponent& exp, const NormSpec& norm);

/**
 * sup over 1 <= n <= 2^N of |s_n f|_{p(.)} (beyond 2^N s_n f = f). Partial sums are
 * built incrementally; a full norm solve only runs when the modular at the current
 * best exceeds 1.
 */
double partial_sum_sup_norm(const GridFunction& f, const VariableExponent& exp);

/**
 * Ratios |T f| / |f| over a family, evaluated in parallel with results kept in
 * family order. Zero denominators are skipped. Summary holds max, min and mean
 * ratio and the number of evaluated cases.
 *
 * Throws std::invalid_argument for PartialSumSup with a Hardy denominator.
 */
Report empirical_opnorm(const OperatorSpec& spec, const VariableExponent& exp, const std::vector<GridFunction>& family,
                        const NormSpec& norm);

/// max over cases of |sum_n E_n theta_n|_{p(.)} / |sum_n theta_n|_{p(.)} (with power r, see conditional_sum).
double dual_doob_constant(const std::vector<std::vector<GridFunction>>& sequences, const VariableExponent& exp,
                          double r = 1.0);

}  // namespace whl::lab
