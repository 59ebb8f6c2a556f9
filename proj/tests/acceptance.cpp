// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "whl/atomic.hpp"
#include "whl/filtration.hpp"
#include "whl/lab/experiments.hpp"
#include "whl/lab/families.hpp"
#include "whl/lab/opnorm.hpp"
#include "whl/maximal.hpp"
#include "whl/martingale.hpp"
#include "whl/vspaces.hpp"
#include "whl/walsh.hpp"

using namespace whl;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

double max_diff(const GridFunction& f, const std::vector<double>& g)
{
    double d = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, std::abs(f[i] - g[i]));
    return d;
}

// Family shared by the norm-inequality criteria: several shapes, fixed seeds.
std::vector<GridFunction> test_family(unsigned res, std::size_t per_kind)
{
    std::vector<GridFunction> out;
    for (auto kind : {lab::FamilyKind::RandomUniform, lab::FamilyKind::SparseSpikes, lab::FamilyKind::RademacherProducts,
                      lab::FamilyKind::RandomMartingaleDifferences}) {
        for (auto& f : lab::generate_family(kind, per_kind, 2024, res)) out.push_back(std::move(f));
    }
    return out;
}

Outcome kernel_identities()
{
    const unsigned res = 12;
    double dirichlet_err = 0.0;
    double fejer_err = 0.0;
    for (unsigned n = 0; n <= res; ++n) {
        const auto d = dirichlet_kernel(cell_count(n), res);
        const std::size_t width = cell_count(res - n);
        for (std::size_t i = 0; i < d.size(); ++i) dirichlet_err = std::max(dirichlet_err, std::abs(d[i] - (i < width ? std::ldexp(1.0, n) : 0.0)));
        fejer_err = std::max(fejer_err, max_abs_diff(fejer_kernel(cell_count(n), res), fejer_dyadic_closed_form(n, res)));
    }
    const unsigned small = 8;
    double slack = kInfinity;
    for (std::size_t n = 1; n < cell_count(small); ++n) {
        const auto k = fejer_kernel(n, small);
        const auto bound = fejer_kernel_bound(n, small);
        for (std::size_t i = 0; i < k.size(); ++i) slack = std::min(slack, bound[i] - std::abs(k[i]));
    }
    return {dirichlet_err <= 1e-12 && fejer_err <= 1e-12 && slack >= -1e-12,
            fmt("D_{2^n} residual %.3g, K_{2^n} residual %.3g (N=12); min majorant slack %.3g (N=8)", dirichlet_err, fejer_err, slack)};
}

Outcome partial_sum_identities()
{
    const unsigned res = 10;
    const auto filt = DyadicFiltration::dyadic(res);
    std::vector<std::size_t> ns;
    for (std::size_t i = 0; i < 64; ++i) ns.push_back(1 + (i * 1023) / 63);
    double cond = 0.0;
    double transform = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        const auto f = oracle::random_function(res, 1000 + seed);
        for (unsigned n = 0; n <= res; ++n) cond = std::max(cond, max_abs_diff(partial_sum(f, cell_count(n)), cond_expectation(f, filt, n)));
        for (std::size_t n : ns) transform = std::max(transform, max_abs_diff(partial_sum_via_transform(f, n), partial_sum(f, n)));
    }
    return {cond <= 1e-10 && transform <= 1e-10,
            fmt("max |s_{2^n}f - E_n f| %.3g, max |s_n f - w_n T_0(f w_n)| %.3g over 100 f x 64 n", cond, transform)};
}

Outcome norm_oracle()
{
    const unsigned res = 10;
    double norm_err = 0.0;
    double modular_err = 0.0;
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
        const auto exp = VariableExponent::constant(res, p);
        for (int seed = 0; seed < 100; ++seed) {
            const auto f = oracle::random_function(res, 2000 + seed, -3.0, 3.0);
            double sum = 0.0;
            for (double v : f.values()) sum += std::pow(std::abs(v), p);
            const double closed = std::pow(sum / static_cast<double>(f.size()), 1.0 / p);
            const double norm = lp_norm(f, exp);
            norm_err = std::max(norm_err, std::abs(norm - closed));
            if (norm > 0.0) modular_err = std::max(modular_err, std::abs(modular(f, exp, norm) - 1.0));
        }
    }
    return {norm_err <= 1e-8 && modular_err <= 1e-6,
            fmt("max |lp_norm - closed form| %.3g, max |modular(f/|f|) - 1| %.3g", norm_err, modular_err)};
}

Outcome log_condition()
{
    double worst = 0.0;
    for (unsigned res = 1; res <= 12; ++res) {
        const auto filt = DyadicFiltration::dyadic(res);
        for (double p : {0.5, 1.0, 2.0, 8.0}) worst = std::max(worst, std::abs(check_condition_log(VariableExponent::constant(res, p), filt).K - 1.0));
        worst = std::max(worst, std::abs(check_condition_log(VariableExponent::split(res, 8.0, 1.1), filt).K - 1.0));
        worst = std::max(worst, std::abs(check_condition_log(VariableExponent::split(res, 0.6, 8.0), filt).K - 1.0));
    }
    const double k = check_condition_log(VariableExponent::affine(2, 1.0, 1.0), DyadicFiltration::dyadic(2)).K;
    const double err = std::abs(k - std::pow(2.0, 0.25));
    return {worst == 0.0 && err <= 1e-12, fmt("max |K - 1| (constant/split, N<=12) %.3g; K(1+x, N=2) = %.15g", worst, k)};
}

Outcome atomic_decomposition()
{
    bool atoms_ok = true;
    double recon = 0.0;
    std::string detail;
    bool ratio_ok = true;
    for (const std::string& name : {std::string("1+x"), std::string("split{8|1.1}")}) {
        auto exponent = [&](unsigned res) {
            return name == "1+x" ? VariableExponent::affine(res, 1.0, 1.0) : VariableExponent::split(res, 8.0, 1.1);
        };
        auto ratio_range = [&](unsigned res, bool verify) {
            const auto exp = exponent(res);
            const auto filt = make_dyadic(res);
            double lo = kInfinity;
            double hi = 0.0;
            for (std::size_t i = 0; i < 50; ++i) {
                const auto f = oracle::random_function(res, 3000 + i, -2.0, 2.0);
                const Martingale m(filt, f - GridFunction::constant(res, f.mean()));
                if (verify) {
                    for (auto kind : {AtomKind::CondSquare, AtomKind::Square, AtomKind::Maximal}) {
                        const auto b = decompose(m, exp, kind);
                        recon = std::max(recon, max_abs_diff(b.reconstruct(), m.terminal()));
                        for (const auto& e : b.entries) atoms_ok = atoms_ok && verify_atom(e.atom, e.tau, exp, kind).passed;
                    }
                }
                const auto b = decompose(m, exp, AtomKind::CondSquare);
                const double r = atomic_norm(b, AtomicNormMode::tsum(0.5)) / lp_norm(cond_square_function(m), exp);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            return std::max(hi, 1.0 / lo);
        };
        const double c6 = ratio_range(6, false);
        double worst = 0.0;
        for (unsigned res = 8; res <= 10; ++res) worst = std::max(worst, ratio_range(res, res == 8));
        ratio_ok = ratio_ok && worst <= 2.0 * c6;
        detail += "; " + name + fmt(": C(6) = %.4g, max C(8..10) = %.4g", c6, worst);
    }
    return {atoms_ok && recon < 1e-10 && ratio_ok,
            std::string(atoms_ok ? "all atoms verified" : "atom check FAILED") + fmt(", reconstruction %.3g", recon) + detail};
}

Outcome doob_suite()
{
    double worst_const = -kInfinity;
    for (double p : {1.5, 2.0, 4.0}) {
        const auto exp = VariableExponent::constant(10, p);
        const auto r = lab::empirical_opnorm({lab::Operator::Doob}, exp, test_family(10, 8), {});
        worst_const = std::max(worst_const, r.summary["max_ratio"].get<double>() - p / (p - 1.0));
    }
    bool ok = worst_const <= 1e-9;
    std::string detail = fmt("max(ratio - p') %.3g", worst_const);

    lab::NormSpec weak;
    weak.lorentz = true;
    weak.q = kInfinity;
    for (const std::string& name : {std::string("1.1+x"), std::string("split{8|1.1}")}) {
        auto constants = [&](unsigned res) {
            const auto exp = name == "1.1+x" ? VariableExponent::affine(res, 1.1, 1.0) : VariableExponent::split(res, 8.0, 1.1);
            const auto family = test_family(res, 6);
            const double m = lab::empirical_opnorm({lab::Operator::Doob}, exp, family, {}).summary["max_ratio"].get<double>();
            const double w = lab::empirical_opnorm({lab::Operator::Doob}, exp, family, weak).summary["max_ratio"].get<double>();
            const double d = lab::dual_doob_constant(lab::generate_sequences(12, 77, res), exp);
            return std::array<double, 3>{m, d, w};
        };
        const auto c6 = constants(6);
        const auto c12 = constants(12);
        for (int i = 0; i < 3; ++i) ok = ok && c12[i] <= 2.0 * c6[i];
        detail += "; " + name + fmt(": M %.4g->%.4g, dual %.4g->%.4g", c6[0], c12[0], c6[1], c12[1])
                  + fmt(", weak %.4g->%.4g (N=6->12)", c6[2], c12[2]);
    }
    return {ok, detail};
}

lab::Report sweep(lab::Counterexample which, const std::string& exponent, double s, unsigned n_min, unsigned n_max)
{
    lab::ExperimentConfig cfg;
    cfg.kind = lab::ExperimentKind::Counterexample;
    cfg.which = which;
    cfg.resolution = 12;
    cfg.exponent = exponent;
    cfg.op.s = s;
    cfg.n_min = n_min;
    cfg.n_max = n_max;
    return lab::run_experiment(cfg);
}

Outcome u_threshold()
{
    const double below = sweep(lab::Counterexample::U, "split:8,1.1", 0.5, 4, 10).summary["fitted_slope"].get<double>();
    const double above = sweep(lab::Counterexample::U, "split:8,1.1", 1.0, 4, 10).summary["fitted_slope"].get<double>();

    double u_err = 0.0;
    double v_err = 0.0;
    for (unsigned res = 1; res <= 6; ++res) {
        const auto f = oracle::random_function(res, 4000 + res);
        for (double s : {0.5, 1.0}) {
            const auto fast = u_op(f, s);
            const auto levels = oracle::brute_u(f, s, res);
            const auto top = oracle::brute_u_level(f, s, res);
            const double limit = 1.0 / (std::pow(2.0, s) - 1.0);
            std::vector<double> expected(f.size());
            for (std::size_t x = 0; x < f.size(); ++x) {
                const double first = std::pow(2.0, -s) * top[x] + (1.0 - std::pow(2.0, -s)) * std::abs(f[x]) * limit;
                expected[x] = std::max({levels[x], first, std::abs(f[x]) * limit});
            }
            u_err = std::max(u_err, max_diff(fast, expected));
            v_err = std::max(v_err, max_diff(v_op(f, 1.0, s), oracle::brute_v(f, 1.0, s)));
        }
    }
    return {below >= 2.0 && above <= 0.1 && u_err <= 1e-12 && v_err <= 1e-12,
            fmt("slope(s=0.5) %.4f (need >= 2), slope(s=1) %.4f (need <= 0.1), oracle |U| %.3g |V| %.3g", below, above,
                u_err, v_err)};
}

Outcome sigma_dichotomy()
{
    const auto bounded = sweep(lab::Counterexample::Sigma, "const:0.6", 1.0, 3, 10);
    const auto growing = sweep(lab::Counterexample::Sigma, "split:0.6,8", 1.0, 3, 10);
    const double ratio = bounded.summary["max_over_min"].get<double>();
    const double slope = growing.summary["fitted_slope"].get<double>();
    return {ratio <= 4.0 && slope >= 0.3,
            fmt("p=0.6: max/min %.4f (need <= 4); split{0.6|8}: slope %.4f (need >= 0.3)", ratio, slope)};
}

Outcome fejer_convergence()
{
    lab::ExperimentConfig cfg;
    cfg.kind = lab::ExperimentKind::FejerConverge;
    cfg.resolution = 10;
    cfg.exponent = "affine:1,1";
    const auto r = lab::run_experiment(cfg);
    const double slope = r.summary["fitted_slope"].get<double>();
    const double final_ratio = r.summary["final_relative_error"].get<double>();

    auto c_emp = [](unsigned res) {
        const auto exp = VariableExponent::affine(res, 1.1, 1.0);
        auto family = test_family(res, 3);
        family.push_back(lab::interval_indicator(res, 1.0 / 3.0));
        double worst = 0.0;
        for (const auto& f : family) worst = std::max(worst, lab::partial_sum_sup_norm(f, exp) / lp_norm(f, exp));
        return worst;
    };
    const double c8 = c_emp(8);
    const double c12 = c_emp(12);
    const bool stable = c12 <= 2.0 * c8 && c8 <= 2.0 * c12;
    return {slope < 0.0 && final_ratio < 0.05 && stable,
            fmt("slope %.4g, final |sigma f - f|/|f| %.4g; C_emp(N=8) %.4f, C_emp(N=12) %.4f", slope, final_ratio, c8, c12)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"kernel identities", kernel_identities},
        {"partial-sum identities", partial_sum_identities},
        {"norm oracle", norm_oracle},
        {"log condition", log_condition},
        {"atomic decomposition", atomic_decomposition},
        {"Doob suite", doob_suite},
        {"U_s threshold", u_threshold},
        {"sigma_* dichotomy", sigma_dichotomy},
        {"Fejer convergence", fejer_convergence},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.passed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
