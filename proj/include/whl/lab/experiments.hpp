#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "whl/grid.hpp"
#include "whl/lab/families.hpp"
#include "whl/lab/opnorm.hpp"
#include "whl/lab/report.hpp"

namespace whl::lab {

enum class ExperimentKind { KernelCheck, FejerConverge, Counterexample, Opnorm };

std::string_view to_string(ExperimentKind kind);

enum class Counterexample { U, V, Sigma };

std::string_view to_string(Counterexample which);
/// "u", "v" or "sigma".
Counterexample parse_counterexample(std::string_view name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::KernelCheck;
    unsigned resolution = 10;
    /// Exponent spec as accepted by io::parse_exponent_spec.
    std::string exponent = "affine:1,1";

    OperatorSpec op;
    NormSpec norm;

    FamilyKind family = FamilyKind::RandomUniform;
    std::size_t count = 16;
    std::uint64_t seed = 1;

    Counterexample which = Counterexample::U;
    unsigned n_min = 4;
    unsigned n_max = 10;

    /// Optional JSON function file for fejer-converge; default is the cell-average of chi_[0,1/3).
    std::optional<std::string> function_path;

    // Assertions; unset ones are not checked.
    std::optional<double> min_slope;
    std::optional<double> max_slope;
    std::optional<double> max_ratio;
};

/// Cell averages of chi_[0,c) at resolution N.
GridFunction interval_indicator(unsigned resolution, double c);

/**
 * kernel-check: D_{2^n} closed form and K_{2^n} closed form for n <= N (tolerance 1e-12)
 *               and the pointwise majorant of |K_n| for 1 <= n < 2^N.
 * fejer-converge: |sigma_{2^k} f - f|_{p(.)} for k = 0..N with an OLS slope over k >= 2;
 *               asserts a negative slope and a final value below 0.05 |f|_{p(.)}.
 * counterexample: sweep over n in [n_min, n_max] of the chosen construction,
 *               columns n, modular_or_norm, log2_value, fitted_slope.
 * opnorm:       empirical_opnorm over the generated family.
 *
 * Throws std::invalid_argument for an invalid configuration.
 */
Report run_experiment(const ExperimentConfig& config);

}  // namespace whl::lab
