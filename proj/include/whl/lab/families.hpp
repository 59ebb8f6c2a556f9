#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "whl/grid.hpp"

namespace whl::lab {

enum class FamilyKind {
    RandomUniform,
    RandomSign,
    SparseSpikes,
    DyadicIndicators,
    RademacherProducts,
    RandomMartingaleDifferences,
};

/// Names as used on the command line, e.g. "random-uniform".
std::string_view to_string(FamilyKind kind);
/// Throws std::invalid_argument for an unknown name.
FamilyKind parse_family_kind(std::string_view name);

/**
 * Seeded generator with a fixed mapping from engine output to doubles, so a
 * family is identical across standard libraries. Member i of a family uses its
 * own stream derived from (seed, i), independent of the family size.
 */
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    double sign() { return (engine_() >> 63) ? -1.0 : 1.0; }

private:
    std::mt19937_64 engine_;
};

/**
 * random-uniform: i.i.d. values in [-1, 1).
 * random-sign: i.i.d. values in {-1, 1}.
 * sparse-spikes: zero except 1..4 distinct cells with signed heights in [1, 2^(N/2)].
 * dyadic-indicators: indicators of the level-N cells in index order, then level N-1, ..., cycling.
 * rademacher-products: w_n for a random 1 <= n < 2^N, scaled by a random amplitude in [1/2, 2).
 * random-martingale-differences: f = sum_{n=1}^N v_{n-1} r_{n-1} with v_{n-1} constant on
 *   level-(n-1) intervals (F_{n-1}-measurable multipliers) and E f = 0.
 *
 * Throws std::invalid_argument for count == 0 and std::out_of_range for N outside [1, 20].
 */
std::vector<GridFunction> generate_family(FamilyKind kind, std::size_t count, std::uint64_t seed, unsigned resolution);

/// Non-negative random sequences theta_0..theta_N (one per family member) for the dual Doob check.
std::vector<std::vector<GridFunction>> generate_sequences(std::size_t count, std::uint64_t seed, unsigned resolution);

}  // namespace whl::lab
