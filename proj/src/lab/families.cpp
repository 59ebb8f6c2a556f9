#include "whl/lab/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "whl/walsh.hpp"

namespace whl::lab {

namespace {

constexpr struct {
    FamilyKind kind;
    std::string_view name;
} kNames[] = {
    {FamilyKind::RandomUniform, "random-uniform"},
    {FamilyKind::RandomSign, "random-sign"},
    {FamilyKind::SparseSpikes, "sparse-spikes"},
    {FamilyKind::DyadicIndicators, "dyadic-indicators"},
    {FamilyKind::RademacherProducts, "rademacher-products"},
    {FamilyKind::RandomMartingaleDifferences, "random-martingale-differences"},
};

std::seed_seq make_seed(std::uint64_t seed, std::uint64_t stream)
{
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

GridFunction uniform_member(Rng& rng, unsigned res)
{
    std::vector<double> v(cell_count(res));
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return GridFunction(res, std::move(v));
}

GridFunction sign_member(Rng& rng, unsigned res)
{
    std::vector<double> v(cell_count(res));
    for (double& x : v) x = rng.sign();
    return GridFunction(res, std::move(v));
}

GridFunction spike_member(Rng& rng, unsigned res)
{
    const std::size_t size = cell_count(res);
    const std::size_t spikes = std::min<std::size_t>(1 + rng.below(4), size);
    std::vector<double> v(size, 0.0);
    for (std::size_t placed = 0; placed < spikes;) {
        const std::size_t cell = rng.below(size);
        if (v[cell] != 0.0) continue;
        v[cell] = rng.sign() * std::exp2(rng.uniform() * 0.5 * res);
        ++placed;
    }
    return GridFunction(res, std::move(v));
}

GridFunction indicator_member(std::size_t index, unsigned res)
{
    // Level N has 2^N intervals, level N-1 has 2^(N-1), ...; 2^(N+1) - 1 in total.
    std::size_t i = index % (cell_count(res + 1) - 1);
    for (unsigned level = res;; --level) {
        if (i < cell_count(level)) return GridFunction::dyadic_indicator(res, level, i);
        i -= cell_count(level);
    }
}

GridFunction rademacher_member(Rng& rng, unsigned res)
{
    const std::size_t n = 1 + rng.below(cell_count(res) - 1);
    return rng.uniform(0.5, 2.0) * walsh_function(n, res);
}

GridFunction martingale_member(Rng& rng, unsigned res)
{
    std::vector<double> v(cell_count(res), 0.0);
    for (unsigned n = 1; n <= res; ++n) {
        // v_{n-1} r_{n-1}: one multiplier per level-(n-1) interval, sign flips on its halves.
        const double scale = rng.uniform(0.0, 1.0);
        const std::size_t width = cell_count(res - n + 1);
        for (std::size_t start = 0; start < v.size(); start += width) {
            const double mult = scale * rng.uniform(-1.0, 1.0);
            for (std::size_t c = start; c < start + width; ++c) v[c] += c - start < width / 2 ? mult : -mult;
        }
    }
    return GridFunction(res, std::move(v));
}

void require_family_args(std::size_t count, unsigned resolution)
{
    if (count == 0) throw std::invalid_argument("generate_family: count must be >= 1");
    if (resolution < 1 || resolution > 20) throw std::out_of_range("generate_family: resolution must lie in [1, 20]");
}

}  // namespace

std::string_view to_string(FamilyKind kind)
{
    for (const auto& e : kNames) {
        if (e.kind == kind) return e.name;
    }
    return "?";
}

FamilyKind parse_family_kind(std::string_view name)
{
    for (const auto& e : kNames) {
        if (e.name == name) return e.kind;
    }
    throw std::invalid_argument("unknown family kind '" + std::string(name) + "'");
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
{
    auto seq = make_seed(seed, stream);
    engine_.seed(seq);
}

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    return std::min(bound - 1, static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)));
}

std::vector<GridFunction> generate_family(FamilyKind kind, std::size_t count, std::uint64_t seed, unsigned resolution)
{
    require_family_args(count, resolution);
    std::vector<GridFunction> family;
    family.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(seed, i);
        switch (kind) {
        case FamilyKind::RandomUniform:
            family.push_back(uniform_member(rng, resolution));
            break;
        case FamilyKind::RandomSign:
            family.push_back(sign_member(rng, resolution));
            break;
        case FamilyKind::SparseSpikes:
            family.push_back(spike_member(rng, resolution));
            break;
        case FamilyKind::DyadicIndicators:
            family.push_back(indicator_member(i, resolution));
            break;
        case FamilyKind::RademacherProducts:
            family.push_back(rademacher_member(rng, resolution));
            break;
        case FamilyKind::RandomMartingaleDifferences:
            family.push_back(martingale_member(rng, resolution));
            break;
        }
    }
    return family;
}

std::vector<std::vector<GridFunction>> generate_sequences(std::size_t count, std::uint64_t seed, unsigned resolution)
{
    require_family_args(count, resolution);
    std::vector<std::vector<GridFunction>> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(seed, i);
        for (unsigned n = 0; n <= resolution; ++n) {
            std::vector<double> v(cell_count(resolution));
            // Mostly sparse terms so the conditional expectations spread mass.
            const double density = rng.uniform(0.01, 0.5);
            for (double& x : v) x = rng.uniform() < density ? rng.uniform(0.0, 4.0) : 0.0;
            out[i].emplace_back(resolution, std::move(v));
        }
    }
    return out;
}

}  // namespace whl::lab
