#include "whl/lab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "whl/io.hpp"
#include "whl/lab/fit.hpp"
#include "whl/lab/parallel.hpp"
#include "whl/maximal.hpp"
#include "whl/vspaces.hpp"
#include "whl/walsh.hpp"

namespace whl::lab {

namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

json config_echo(const ExperimentConfig& c)
{
    return {{"kind", std::string(to_string(c.kind))},
            {"resolution", c.resolution},
            {"exponent", c.exponent},
            {"operator", std::string(to_string(c.op.op))},
            {"s", c.op.s},
            {"alpha", c.op.alpha},
            {"lorentz_q", c.norm.lorentz ? (std::isinf(c.norm.q) ? json("inf") : json(c.norm.q)) : json(nullptr)},
            {"denominator", std::string(to_string(c.norm.denominator))},
            {"family", std::string(to_string(c.family))},
            {"count", c.count},
            {"seed", c.seed},
            {"which", std::string(to_string(c.which))},
            {"n_min", c.n_min},
            {"n_max", c.n_max},
            {"function", c.function_path ? json(*c.function_path) : json(nullptr)},
            {"min_slope", optional_json(c.min_slope)},
            {"max_slope", optional_json(c.max_slope)},
            {"max_ratio", optional_json(c.max_ratio)}};
}

Report kernel_check(unsigned res)
{
    Report report;
    report.title = "kernel-check";
    report.columns = {"identity", "n", "value"};
    double dirichlet_err = 0.0;
    double fejer_err = 0.0;
    for (unsigned n = 0; n <= res; ++n) {
        const GridFunction closed = std::ldexp(1.0, static_cast<int>(n)) * GridFunction::dyadic_indicator(res, n, 0);
        const double dirichlet_r = max_abs_diff(dirichlet_kernel(cell_count(n), res), closed);
        const double fejer_r = max_abs_diff(fejer_kernel(cell_count(n), res), fejer_dyadic_closed_form(n, res));
        report.add_row({"dirichlet-dyadic", n, dirichlet_r});
        report.add_row({"fejer-dyadic", n, fejer_r});
        dirichlet_err = std::max(dirichlet_err, dirichlet_r);
        fejer_err = std::max(fejer_err, fejer_r);
    }

    // Majorant slack min(bound - |K_n|) grouped by bit width m of n.
    double slack = kInfinity;
    for (unsigned m = 1; m <= res; ++m) {
        const std::size_t first = cell_count(m - 1);
        const GridFunction bound = fejer_kernel_bound(first, res);
        std::vector<double> group(first, kInfinity);
        parallel_for(first, [&](std::size_t offset) {
            const GridFunction k = fejer_kernel(first + offset, res);
            double s = kInfinity;
            for (std::size_t x = 0; x < k.size(); ++x) s = std::min(s, bound[x] - std::abs(k[x]));
            group[offset] = s;
        });
        const double g = *std::min_element(group.begin(), group.end());
        report.add_row({"fejer-majorant-slack", m, g});
        slack = std::min(slack, g);
    }
    report.summary["max_dirichlet_residual"] = dirichlet_err;
    report.summary["max_fejer_residual"] = fejer_err;
    report.summary["min_majorant_slack"] = slack;
    report.check("dirichlet-dyadic", dirichlet_err <= 1e-12, dirichlet_err, 1e-12);
    report.check("fejer-dyadic", fejer_err <= 1e-12, fejer_err, 1e-12);
    report.check("fejer-majorant", slack >= -1e-12, slack, -1e-12);
    return report;
}

Report fejer_converge(const ExperimentConfig& c, const VariableExponent& exp)
{
    const GridFunction f = c.function_path ? io::function_from_json(io::read_json_file(*c.function_path))
                                           : interval_indicator(c.resolution, 1.0 / 3.0);
    require_same_resolution(f.resolution(), exp.resolution(), "fejer-converge");
    const double norm_f = lp_norm(f, exp);
    if (norm_f == 0.0) throw std::invalid_argument("fejer-converge: f is zero");

    Report report;
    report.title = "fejer-converge";
    report.columns = {"k", "error_norm", "relative_error", "non_increasing"};
    std::vector<double> ks;
    std::vector<double> errs;
    double prev = kInfinity;
    for (unsigned k = 0; k <= f.resolution(); ++k) {
        const double e = lp_norm(fejer_mean(f, cell_count(k)) - f, exp);
        report.add_row({k, e, e / norm_f, e <= prev});
        prev = e;
        if (k >= 2) {
            ks.push_back(k);
            errs.push_back(e);
        }
    }
    const double slope = ks.size() >= 2 ? ols_slope(ks, errs) : 0.0;
    const double final_ratio = errs.empty() ? prev / norm_f : errs.back() / norm_f;
    report.summary["function_norm"] = norm_f;
    report.summary["fitted_slope"] = slope;
    report.summary["final_relative_error"] = final_ratio;
    report.check("negative-slope", slope < 0.0, slope, 0.0);
    report.check("final-error", final_ratio < 0.05, final_ratio, 0.05);
    return report;
}

// Slope suggested by the lower-bound construction at level n (see the maximal module).
double reference_slope(const ExperimentConfig& c, const VariableExponent& exp, unsigned n)
{
    const unsigned res = exp.resolution();
    const auto shifted = TranslateSet::shifted_interval(res, n, 0, 0).cells();
    const GridFunction left = GridFunction::dyadic_indicator(res, n, 0);
    std::vector<std::size_t> base;
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (left[i] != 0.0) base.push_back(i);
    }
    switch (c.which) {
    case Counterexample::U:
        return exponent_bounds(exp, base).second * (1.0 / exponent_bounds(exp, shifted).first - c.op.s) - 1.0;
    case Counterexample::V:
        return exponent_bounds(exp, base).second * (1.0 / exponent_bounds(exp, shifted).first - c.op.s - c.op.alpha)
               - 1.0;
    case Counterexample::Sigma: {
        std::vector<std::size_t> parent;
        for (std::size_t i = 0; i < cell_count(res - n + 1); ++i) parent.push_back(i);
        return exponent_bounds(exp, shifted).second * (1.0 / exponent_bounds(exp, parent).first - 1.0) - 1.0;
    }
    }
    return 0.0;
}

Report counterexample_sweep(const ExperimentConfig& c, const VariableExponent& exp)
{
    if (c.n_min < 1 || c.n_max > c.resolution || c.n_min >= c.n_max) {
        throw std::invalid_argument("counterexample: need 1 <= n_min < n_max <= resolution");
    }
    const std::size_t count = c.n_max - c.n_min + 1;
    std::vector<double> values(count);
    parallel_for(count, [&](std::size_t i) {
        const unsigned n = c.n_min + static_cast<unsigned>(i);
        switch (c.which) {
        case Counterexample::U:
            values[i] = u_counterexample(n, exp, c.op.s);
            break;
        case Counterexample::V:
            values[i] = v_counterexample(n, exp, c.op.alpha, c.op.s);
            break;
        case Counterexample::Sigma:
            values[i] = sigma_counterexample(n, exp);
            break;
        }
    });

    std::vector<double> ns(count);
    std::vector<double> logs(count);
    for (std::size_t i = 0; i < count; ++i) {
        ns[i] = c.n_min + static_cast<double>(i);
        logs[i] = std::log2(values[i]);
    }
    const double slope = ols_slope(ns, logs);

    Report report;
    report.title = "counterexample-" + std::string(to_string(c.which));
    report.columns = {"n", "modular_or_norm", "log2_value", "fitted_slope"};
    for (std::size_t i = 0; i < count; ++i) report.add_row({static_cast<unsigned>(ns[i]), values[i], logs[i], slope});
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    report.summary["fitted_slope"] = slope;
    report.summary["max_over_min"] = *hi / *lo;
    report.summary["reference_slope"] = reference_slope(c, exp, c.n_max);
    report.summary["quantity"] = c.which == Counterexample::Sigma ? "norm" : "modular";
    if (c.which == Counterexample::V) report.metadata["v_levels"] = "truncated at n <= N";
    if (c.min_slope) report.check("min-slope", slope >= *c.min_slope, slope, *c.min_slope);
    if (c.max_slope) report.check("max-slope", slope <= *c.max_slope, slope, *c.max_slope);
    return report;
}

Report opnorm_study(const ExperimentConfig& c, const VariableExponent& exp)
{
    const auto family = generate_family(c.family, c.count, c.seed, c.resolution);
    Report report = empirical_opnorm(c.op, exp, family, c.norm);
    if (c.max_ratio) {
        const double m = report.summary["max_ratio"].get<double>();
        report.check("max-ratio", m <= *c.max_ratio, m, *c.max_ratio);
    }
    return report;
}

}  // namespace

std::string_view to_string(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::KernelCheck:
        return "kernel-check";
    case ExperimentKind::FejerConverge:
        return "fejer-converge";
    case ExperimentKind::Counterexample:
        return "counterexample";
    case ExperimentKind::Opnorm:
        return "opnorm";
    }
    return "?";
}

std::string_view to_string(Counterexample which)
{
    switch (which) {
    case Counterexample::U:
        return "u";
    case Counterexample::V:
        return "v";
    case Counterexample::Sigma:
        return "sigma";
    }
    return "?";
}

Counterexample parse_counterexample(std::string_view name)
{
    if (name == "u") return Counterexample::U;
    if (name == "v") return Counterexample::V;
    if (name == "sigma") return Counterexample::Sigma;
    throw std::invalid_argument("unknown counterexample '" + std::string(name) + "' (expected u, v or sigma)");
}

GridFunction interval_indicator(unsigned resolution, double c)
{
    std::vector<double> v(cell_count(resolution));
    const double w = std::ldexp(1.0, -static_cast<int>(resolution));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = static_cast<double>(i) * w;
        v[i] = std::clamp((c - a) / w, 0.0, 1.0);
    }
    return GridFunction(resolution, std::move(v));
}

Report run_experiment(const ExperimentConfig& config)
{
    if (config.resolution < 1 || config.resolution > 20) {
        throw std::invalid_argument("resolution must lie in [1, 20]");
    }
    if (config.count < 1) throw std::invalid_argument("count must be >= 1");

    Report report;
    std::optional<VariableExponent> exp;
    if (config.kind == ExperimentKind::KernelCheck) {
        report = kernel_check(config.resolution);
    } else {
        exp = io::parse_exponent_spec(config.exponent, config.resolution);
        switch (config.kind) {
        case ExperimentKind::FejerConverge:
            report = fejer_converge(config, *exp);
            break;
        case ExperimentKind::Counterexample:
            report = counterexample_sweep(config, *exp);
            break;
        case ExperimentKind::Opnorm:
            report = opnorm_study(config, *exp);
            break;
        case ExperimentKind::KernelCheck:
            break;
        }
    }
    report.metadata["version"] = kVersion;
    report.metadata["seed"] = config.seed;
    report.metadata["config"] = config_echo(config);
    if (exp) {
        report.metadata["exponent_values"] = std::vector<double>(exp->values().begin(), exp->values().end());
        report.metadata["condition_log_K"] = check_condition_log(*exp, DyadicFiltration::dyadic(exp->resolution())).K;
    }
    report.summary["passed"] = report.passed;
    return report;
}

}  // namespace whl::lab
