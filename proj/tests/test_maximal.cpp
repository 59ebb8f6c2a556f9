#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "whl/atomic.hpp"
#include "whl/filtration.hpp"
#include "whl/maximal.hpp"
#include "whl/vspaces.hpp"

using namespace whl;

namespace {

void expect_values(const GridFunction& f, std::vector<double> expected, double tol = 1e-12)
{
    ASSERT_EQ(f.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(f[i], expected[i], tol) << "cell " << i;
}

double max_diff(const GridFunction& f, const std::vector<double>& g)
{
    double d = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, std::abs(f[i] - g[i]));
    return d;
}

std::vector<std::size_t> as_vector(const std::set<std::size_t>& s)
{
    return {s.begin(), s.end()};
}

}  // namespace

TEST(TranslateSet, ShiftedInterval)
{
    // I_{0,2} ∔ 1/2 = [1/2, 3/4) at N = 3.
    const auto t = TranslateSet::shifted_interval(3, 2, 0, 0);
    EXPECT_EQ(t.cells(), (std::vector<std::size_t>{4, 5}));
    EXPECT_DOUBLE_EQ(t.measure(), 0.25);
    // I_{3,2} ∔ 1/4 = [1/2, 3/4).
    EXPECT_EQ(TranslateSet::shifted_interval(3, 2, 3, 1).cells(), (std::vector<std::size_t>{4, 5}));
    EXPECT_THROW(TranslateSet::shifted_interval(3, 2, 0, 2), std::out_of_range);
    EXPECT_THROW(TranslateSet::shifted_interval(3, 4, 0, 0), std::out_of_range);
    EXPECT_THROW(TranslateSet::shifted_interval(3, 2, 4, 0), std::out_of_range);
}

TEST(TranslateSet, ShiftedBandMatchesExplicitSumset)
{
    const unsigned res = 5;
    for (unsigned n = 1; n <= res; ++n) {
        for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
            const double left = std::ldexp(static_cast<double>(k), -static_cast<int>(n));
            const auto interval = oracle::interval_containing(left, n, res);
            for (unsigned j = 0; j < n; ++j) {
                for (unsigned i = j; i < n; ++i) {
                    const auto band = oracle::interval_containing(std::ldexp(1.0, -static_cast<int>(j) - 1), i, res);
                    const auto expected = as_vector(oracle::sumset(interval, band, res));
                    const auto t = TranslateSet::shifted_band(res, n, k, j, i);
                    ASSERT_EQ(t.cells(), expected) << n << " " << k << " " << j << " " << i;
                    // The same set through the generic sumset constructor.
                    const auto generic = TranslateSet::sumset(res, as_vector(interval), as_vector(band));
                    ASSERT_EQ(generic.cells(), expected);
                }
            }
        }
    }
}

TEST(TranslateSet, Average)
{
    const GridFunction f(2, {1, 2, 3, 4});
    const auto t = TranslateSet::shifted_interval(2, 1, 0, 0);
    EXPECT_DOUBLE_EQ(t.average(f), 3.5);
    EXPECT_THROW(t.average(GridFunction(3)), std::invalid_argument);
}

TEST(UOperator, Examples)
{
    EXPECT_TRUE(u_op(GridFunction(3), 0.5).is_zero());
    expect_values(u_op(GridFunction(1, {0.0, 1.0}), 1.0), {0.5, 1.0});
    expect_values(u_op(GridFunction::constant(4, 1.0), 1.0), std::vector<double>(16, 1.0));
    EXPECT_THROW(u_op(GridFunction(2), 0.0), std::domain_error);
    EXPECT_THROW(u_op(GridFunction(2), -1.0), std::domain_error);
}

TEST(VOperator, Examples)
{
    EXPECT_TRUE(v_op(GridFunction(3), 1.0, 1.0).is_zero());
    expect_values(v_op(GridFunction::constant(2, 1.0), 1.0, 1.0), std::vector<double>(4, 7.0 / 8.0));
    const GridFunction right(2, {0, 0, 1, 1});
    expect_values(v_op(right, 1.0, 1.0), oracle::brute_v(right, 1.0, 1.0));
    EXPECT_THROW(v_op(GridFunction(2), 0.0, 1.0), std::domain_error);
    EXPECT_THROW(v_op(GridFunction(2), 1.0, 0.0), std::domain_error);
}

TEST(VOperator, HandComputedRightHalf)
{
    // x in [0,1/4). Level 1: j=i=0 shifts by [0,1), 2^-1 * 1/2 = 1/4. Level 2: j=i=0 gives
    // 2^-2 * 1/2, j=0,i=1 shifts by [1/2,1) for 2^-3 * 1, j=i=1 shifts by [0,1/2) for 0; total 1/4.
    const auto v = v_op(GridFunction(2, {0, 0, 1, 1}), 1.0, 1.0);
    EXPECT_NEAR(v[0], 0.25, 1e-15);
}

class MaximalOracle : public ::testing::TestWithParam<unsigned> {};

TEST_P(MaximalOracle, UMatchesBruteForce)
{
    const unsigned res = GetParam();
    const auto f = oracle::random_function(res, 60 + res);
    for (double s : {0.3, 0.5, 1.0, 2.0}) {
        const auto fast = u_op(f, s);
        // Levels <= N plus the exact tail endpoints, from the brute-force level-N sum.
        const auto levels = oracle::brute_u(f, s, res);
        const auto top = oracle::brute_u_level(f, s, res);
        std::vector<double> expected(f.size());
        const double limit_weight = 1.0 / (std::pow(2.0, s) - 1.0);
        for (std::size_t x = 0; x < f.size(); ++x) {
            const double first = std::pow(2.0, -s) * top[x] + (1.0 - std::pow(2.0, -s)) * std::abs(f[x]) * limit_weight;
            expected[x] = std::max({levels[x], first, std::abs(f[x]) * limit_weight});
        }
        EXPECT_LE(max_diff(fast, expected), 1e-12) << "s=" << s;

        // The tail formula against direct evaluation of the levels above N.
        const auto deep = oracle::brute_u(f, s, res + 30);
        for (std::size_t x = 0; x < f.size(); ++x) {
            EXPECT_GE(fast[x], deep[x] - 1e-12);
            // Levels beyond N + 30 approach the limit within 2^{-30 s} of it.
            EXPECT_LE(fast[x], std::max(deep[x], std::abs(f[x]) * limit_weight) + 1e-9);
        }
        if (s >= 1.0) {
            EXPECT_LE(max_diff(fast, deep), 1e-9) << "s=" << s;
        }
    }
}

TEST_P(MaximalOracle, VMatchesBruteForce)
{
    const unsigned res = GetParam();
    const auto f = oracle::random_function(res, 70 + res);
    for (auto [alpha, s] : {std::pair{1.0, 1.0}, std::pair{0.3, 0.7}, std::pair{2.0, 0.5}}) {
        EXPECT_LE(max_diff(v_op(f, alpha, s), oracle::brute_v(f, alpha, s)), 1e-12) << alpha << "," << s;
    }
}

INSTANTIATE_TEST_SUITE_P(Resolutions, MaximalOracle, ::testing::Values(1u, 2u, 3u, 4u, 5u, 6u));

TEST(MaximalOperators, HomogeneityMonotonicityAndSupBounds)
{
    const unsigned res = 7;
    for (int seed = 0; seed < 5; ++seed) {
        const auto f = oracle::random_function(res, 80 + seed);
        const double c = -2.75;
        for (double s : {0.4, 1.0}) {
            EXPECT_LE(max_abs_diff(u_op(c * f, s), std::abs(c) * u_op(f, s)), 1e-12);
            EXPECT_LE(max_abs_diff(v_op(c * f, 0.5, s), std::abs(c) * v_op(f, 0.5, s)), 1e-12);

            const auto bigger = f.abs() + oracle::random_function(res, 90 + seed, 0.0, 1.0);
            const auto uf = u_op(f, s);
            const auto ug = u_op(bigger, s);
            const auto vf = v_op(f, 0.5, s);
            const auto vg = v_op(bigger, 0.5, s);
            for (std::size_t i = 0; i < f.size(); ++i) {
                EXPECT_LE(uf[i], ug[i] + 1e-12);
                EXPECT_LE(vf[i], vg[i] + 1e-12);
            }

            EXPECT_LE(uf.sup_norm(), f.sup_norm() / (std::pow(2.0, s) - 1.0) + 1e-12);
            const double v_const = 1.0 / (1.0 - std::pow(2.0, -0.5)) / (1.0 - std::pow(2.0, -s));
            EXPECT_LE(vf.sup_norm(), v_const * f.sup_norm() + 1e-12);
        }
    }
}

TEST(Counterexamples, SplitExponentSatisfiesLogCondition)
{
    for (unsigned res : {1u, 4u, 12u}) {
        EXPECT_DOUBLE_EQ(check_condition_log(VariableExponent::split(res, 8.0, 1.1), DyadicFiltration::dyadic(res)).K, 1.0);
        EXPECT_DOUBLE_EQ(check_condition_log(VariableExponent::split(res, 0.6, 8.0), DyadicFiltration::dyadic(res)).K, 1.0);
    }
}

TEST(Counterexamples, Spike)
{
    const auto exp = VariableExponent::split(4, 8.0, 1.1);
    const auto spike = shifted_spike(2, exp);
    // I_{0,2} ∔ 1/2 = [1/2, 3/4), where p = 1.1.
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(spike[i], (i >= 8 && i < 12) ? std::pow(2.0, 2.0 / 1.1) : 0.0, 1e-12);
    // Its norm stays O(1): modular at lambda = 1 is 2^{n p/p_-} 2^-n = 1.
    EXPECT_NEAR(modular(spike, exp, 1.0), 1.0, 1e-12);
    EXPECT_THROW(shifted_spike(0, exp), std::out_of_range);
    EXPECT_THROW(shifted_spike(5, exp), std::out_of_range);
}

TEST(Counterexamples, ConstantExponentIsBounded)
{
    const unsigned res = 10;
    const auto exp = VariableExponent::constant(res, 2.0);
    double u_max = 0.0;
    double v_max = 0.0;
    double sigma_max = 0.0;
    for (unsigned n = 1; n <= res; ++n) {
        u_max = std::max(u_max, u_counterexample(n, exp, 0.5));
        v_max = std::max(v_max, v_counterexample(n, exp, 0.5, 0.5));
        sigma_max = std::max(sigma_max, sigma_counterexample(n, exp));
    }
    // Constant bounds from the sup-norm estimates with |f|_2 = 1.
    EXPECT_LT(u_max, 100.0);
    EXPECT_LT(v_max, 1000.0);
    EXPECT_LT(sigma_max, 10.0);
}

TEST(Counterexamples, UGrowsOutsideRegime)
{
    const unsigned res = 10;
    const auto exp = VariableExponent::split(res, 8.0, 1.1);
    EXPECT_GT(u_counterexample(8, exp, 0.5), 16.0 * u_counterexample(4, exp, 0.5));
}

TEST(Counterexamples, FejerTestAtomIsAMaximalAtom)
{
    const unsigned res = 8;
    const auto filt = make_dyadic(res);
    for (const auto& exp : {VariableExponent::constant(res, 2.0), VariableExponent::constant(res, 0.6)}) {
        for (unsigned n = 1; n <= res; ++n) {
            const auto a = fejer_test_atom(n, exp);
            EXPECT_NEAR(a.mean(), 0.0, 1e-15);
            // Supported on I_{0,n-1} with vanishing average there: an atom for tau = n-1 on that interval.
            std::vector<int> tau(a.size(), StoppingTime::kNever);
            const std::size_t width = std::size_t{1} << (res - (n - 1));
            for (std::size_t c = 0; c < width; ++c) tau[c] = static_cast<int>(n - 1);
            const StoppingTime t(*filt, tau);
            EXPECT_TRUE(verify_atom(Martingale(filt, a), t, exp, AtomKind::Maximal).passed) << n;
        }
    }
}

TEST(Counterexamples, SigmaGrowsOutsideRegime)
{
    const unsigned res = 10;
    const auto exp = VariableExponent::split(res, 0.6, 8.0);
    EXPECT_GT(sigma_counterexample(9, exp), 2.0 * sigma_counterexample(4, exp));
}
