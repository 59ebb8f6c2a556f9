// Command-line front end: norms, condition checks, decompositions and the experiment drivers.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "whl/atomic.hpp"
#include "whl/io.hpp"
#include "whl/lab/experiments.hpp"
#include "whl/martingale.hpp"
#include "whl/vspaces.hpp"

namespace {

using nlohmann::json;
using namespace whl;

struct Output {
    std::string path;
    std::string format = "json";
};

void add_output(CLI::App* cmd, Output& out)
{
    cmd->add_option("--out", out.path, "Write the result to this file instead of stdout");
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void emit(const std::string& text, const Output& out)
{
    if (out.path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(out.path, text);
    }
}

void emit_json(const json& j, const Output& out)
{
    emit(j.dump(2) + "\n", out);
}

int emit_report(const lab::Report& report, const Output& out)
{
    emit(out.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n", out);
    if (!out.path.empty()) std::cerr << report.title << ": " << (report.passed ? "PASS" : "FAIL") << "\n";
    return report.passed ? 0 : 1;
}

json number_or_inf(double v)
{
    return std::isinf(v) ? json("inf") : json(v);
}

DyadicFiltration load_filtration(const std::string& path, unsigned resolution)
{
    if (path.empty()) return DyadicFiltration::dyadic(resolution);
    auto filt = io::filtration_from_json(io::read_json_file(path));
    require_same_resolution(filt.resolution(), resolution, "filtration file");
    return filt;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Variable-exponent martingale Hardy spaces and Walsh-Fourier experiments"};
    app.require_subcommand(1);

    Output out;

    // norm
    std::string norm_fn;
    std::string norm_exp;
    std::optional<double> norm_q;
    auto* norm = app.add_subcommand("norm", "L_p(.) norm and optional Lorentz quasi-norm of a function");
    norm->add_option("fn-file", norm_fn, "Function JSON file")->required();
    norm->add_option("exp-file", norm_exp, "Exponent JSON file or const:p / affine:a,c / split:l,r")->required();
    norm->add_option("--lorentz,--q", norm_q, "Lorentz second index q (inf allowed)");
    add_output(norm, out);

    // check-condition
    std::string cond_exp;
    std::string cond_filt;
    unsigned cond_res = 0;
    auto* cond = app.add_subcommand("check-condition", "Evaluate the log-type condition constant K");
    cond->add_option("exp-file", cond_exp, "Exponent JSON file or formula spec")->required();
    cond->add_option("--filtration", cond_filt, "Filtration JSON file (default: dyadic)");
    cond->add_option("--resolution", cond_res, "Resolution for formula specs");
    add_output(cond, out);

    // decompose
    std::string dec_fn;
    std::string dec_exp;
    std::string dec_kind = "s";
    std::string dec_filt;
    double dec_q = 1.0;
    std::optional<double> dec_t;
    auto* dec = app.add_subcommand("decompose", "Stopping-time atomic decomposition of a martingale");
    dec->add_option("fn-file", dec_fn, "Terminal function JSON file")->required();
    dec->add_option("exp-file", dec_exp, "Exponent JSON file or formula spec")->required();
    dec->add_option("--kind", dec_kind, "Atom kind")->check(CLI::IsMember({"s", "S", "M"}));
    dec->add_option("--filtration", dec_filt, "Filtration JSON file (default: dyadic)");
    dec->add_option("--q", dec_q, "Exponent of the sequence atomic norm");
    dec->add_option("--t", dec_t, "Exponent of the t-sum atomic norm, 0 < t < min(p_-, 1)");
    add_output(dec, out);

    // experiments
    lab::ExperimentConfig cfg;
    std::string family = "random-uniform";
    std::string op = "M";
    std::string which = "u";
    std::string denominator = "function";
    std::optional<std::string> exp_spec;
    std::optional<double> lorentz_q;
    std::string function_path;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--resolution", cfg.resolution, "Grid resolution N");
        cmd->add_option("--exp", exp_spec, "Exponent JSON file or const:p / affine:a,c / split:l,r");
        cmd->add_option("--seed", cfg.seed, "Random seed");
        add_output(cmd, out);
    };

    auto* kernel = app.add_subcommand("kernel-check", "Dirichlet and Fejer kernel identities");
    common(kernel);

    auto* fejer = app.add_subcommand("fejer-converge", "|sigma_{2^k} f - f| as k grows");
    common(fejer);
    fejer->add_option("--function", function_path, "Function JSON file (default: chi_[0,1/3) cell averages)");

    auto* opnorm = app.add_subcommand("opnorm", "Empirical operator norm over a generated family");
    common(opnorm);
    opnorm->add_option("--operator", op, "identity, M, S, s, sigma*, sigma2n-max, U, V, T_b, sn-sup");
    opnorm->add_option("--family", family, "Test-function family");
    opnorm->add_option("--count", cfg.count, "Family size");
    opnorm->add_option("--s", cfg.op.s, "Parameter s of U_s and V_{alpha,s}");
    opnorm->add_option("--alpha", cfg.op.alpha, "Parameter alpha of V_{alpha,s}");
    opnorm->add_option("--q", lorentz_q, "Measure T f in the Lorentz quasi-norm with this q");
    opnorm->add_option("--denominator", denominator, "function, H-M, H-S or H-s");
    opnorm->add_option("--max-ratio", cfg.max_ratio, "Fail when the largest ratio exceeds this");

    auto* counter = app.add_subcommand("counterexample", "Growth sweep of a counterexample construction");
    common(counter);
    counter->add_option("--which", which, "Construction")->check(CLI::IsMember({"u", "v", "sigma"}));
    counter->add_option("--s", cfg.op.s, "Parameter s");
    counter->add_option("--alpha", cfg.op.alpha, "Parameter alpha (v only)");
    counter->add_option("--n-min", cfg.n_min, "First level of the sweep");
    counter->add_option("--n-max", cfg.n_max, "Last level of the sweep");
    counter->add_option("--min-slope", cfg.min_slope, "Fail when the fitted log2-slope is below this");
    counter->add_option("--max-slope", cfg.max_slope, "Fail when the fitted log2-slope is above this");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*norm) {
            const auto f = io::function_from_json(io::read_json_file(norm_fn));
            const auto exp = io::parse_exponent_spec(norm_exp, f.resolution());
            const double value = lp_norm(f, exp);
            json result{{"lp_norm", value}, {"modular_at_norm", value > 0 ? modular(f, exp, value) : 0.0}};
            if (norm_q) result["lorentz_norm"] = lorentz_norm(f, exp, *norm_q);
            emit_json(result, out);
            return 0;
        }
        if (*cond) {
            const auto exp = io::parse_exponent_spec(cond_exp, cond_res);
            const auto filt = load_filtration(cond_filt, exp.resolution());
            const auto report = check_condition_log(exp, filt);
            emit_json({{"K", report.K},
                       {"worst_atom", {{"level", report.worst_atom.level}, {"index", report.worst_atom.index}}},
                       {"regularity", regularity_constant(filt)}},
                      out);
            return 0;
        }
        if (*dec) {
            const auto f = io::function_from_json(io::read_json_file(dec_fn));
            const auto exp = io::parse_exponent_spec(dec_exp, f.resolution());
            const auto filt = std::make_shared<const DyadicFiltration>(load_filtration(dec_filt, f.resolution()));
            const auto kind = parse_atom_kind(dec_kind);
            const Martingale m(filt, f);
            const auto bundle = decompose(m, exp, kind);
            bool all_atoms = true;
            for (const auto& e : bundle.entries) all_atoms = all_atoms && verify_atom(e.atom, e.tau, exp, kind).passed;
            const double error = max_abs_diff(bundle.reconstruct(), f);
            json result = io::to_json(bundle);
            result["atoms_verified"] = all_atoms;
            result["reconstruction_error"] = error;
            result["atomic_norm_sequence"] = {{"q", number_or_inf(dec_q)},
                                              {"value", atomic_norm(bundle, AtomicNormMode::sequence(dec_q))}};
            if (dec_t) {
                result["atomic_norm_tsum"] = {{"t", *dec_t},
                                              {"value", atomic_norm(bundle, AtomicNormMode::tsum(*dec_t))}};
            }
            emit_json(result, out);
            return all_atoms && error < 1e-10 ? 0 : 1;
        }

        if (*kernel) {
            cfg.kind = lab::ExperimentKind::KernelCheck;
        } else if (*fejer) {
            cfg.kind = lab::ExperimentKind::FejerConverge;
            if (!function_path.empty()) cfg.function_path = function_path;
        } else if (*opnorm) {
            cfg.kind = lab::ExperimentKind::Opnorm;
            cfg.op.op = lab::parse_operator(op);
            cfg.family = lab::parse_family_kind(family);
            cfg.norm.denominator = lab::parse_denominator(denominator);
            if (lorentz_q) {
                cfg.norm.lorentz = true;
                cfg.norm.q = *lorentz_q;
            }
        } else {
            cfg.kind = lab::ExperimentKind::Counterexample;
            cfg.which = lab::parse_counterexample(which);
            if (!exp_spec) exp_spec = cfg.which == lab::Counterexample::Sigma ? "split:0.6,8" : "split:8,1.1";
        }
        if (exp_spec) cfg.exponent = *exp_spec;
        return emit_report(lab::run_experiment(cfg), out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
