#include "whl/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "whl/grid.hpp"

namespace whl {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

std::vector<DyadicFiltration::Partition> dyadic_levels(unsigned resolution)
{
    std::vector<DyadicFiltration::Partition> levels(resolution + 1);
    for (unsigned n = 0; n <= resolution; ++n) {
        const std::size_t count = whl::cell_count(n);
        const std::size_t width = whl::cell_count(resolution - n);
        auto& part = levels[n];
        part.resize(count);
        for (std::size_t k = 0; k < count; ++k) {
            part[k].resize(width);
            for (std::size_t c = 0; c < width; ++c) part[k][c] = k * width + c;
        }
    }
    return levels;
}

}  // namespace

DyadicFiltration::DyadicFiltration(unsigned resolution, std::vector<Partition> levels)
    : resolution_(resolution), cells_(whl::cell_count(resolution)), levels_(std::move(levels))
{
    if (resolution > kMaxResolution) throw std::invalid_argument("DyadicFiltration: resolution too large");
    if (levels_.size() != resolution + 1) {
        throw std::invalid_argument("DyadicFiltration: expected " + std::to_string(resolution + 1) + " levels");
    }

    atom_of_.assign(resolution + 1, std::vector<std::size_t>(cells_, kUnassigned));
    for (unsigned n = 0; n <= resolution; ++n) {
        for (std::size_t a = 0; a < levels_[n].size(); ++a) {
            if (levels_[n][a].empty()) throw std::invalid_argument("DyadicFiltration: empty atom");
            for (std::size_t c : levels_[n][a]) {
                if (c >= cells_) throw std::invalid_argument("DyadicFiltration: cell index out of range");
                if (atom_of_[n][c] != kUnassigned) {
                    throw std::invalid_argument("DyadicFiltration: level " + std::to_string(n)
                                                + " is not a partition (overlap)");
                }
                atom_of_[n][c] = a;
            }
        }
        if (std::find(atom_of_[n].begin(), atom_of_[n].end(), kUnassigned) != atom_of_[n].end()) {
            throw std::invalid_argument("DyadicFiltration: level " + std::to_string(n)
                                        + " does not cover every cell");
        }
    }
    if (levels_[0].size() != 1) throw std::invalid_argument("DyadicFiltration: level 0 must be trivial");
    if (levels_[resolution].size() != cells_) {
        throw std::invalid_argument("DyadicFiltration: finest level must be singletons");
    }

    parent_.assign(resolution + 1, {});
    for (unsigned n = 1; n <= resolution; ++n) {
        parent_[n].resize(levels_[n].size());
        for (std::size_t a = 0; a < levels_[n].size(); ++a) {
            const auto& atom = levels_[n][a];
            const std::size_t p = atom_of_[n - 1][atom.front()];
            for (std::size_t c : atom) {
                if (atom_of_[n - 1][c] != p) {
                    throw std::invalid_argument("DyadicFiltration: level " + std::to_string(n)
                                                + " does not refine level " + std::to_string(n - 1));
                }
            }
            parent_[n][a] = p;
        }
    }

    // Flag the canonical layout: level-n atom k is exactly the k-th block of 2^(N-n) cells.
    dyadic_ = true;
    for (unsigned n = 0; n <= resolution && dyadic_; ++n) {
        const std::size_t width = whl::cell_count(resolution - n);
        for (std::size_t c = 0; c < cells_; ++c) {
            if (atom_of_[n][c] != c / width) {
                dyadic_ = false;
                break;
            }
        }
    }
}

DyadicFiltration DyadicFiltration::dyadic(unsigned resolution)
{
    return DyadicFiltration(resolution, dyadic_levels(resolution));
}

double DyadicFiltration::measure(AtomId id) const
{
    return std::ldexp(static_cast<double>(atom(id).size()), -static_cast<int>(resolution_));
}

double regularity_constant(const DyadicFiltration& filt)
{
    double r = 1.0;
    for (unsigned n = 1; n <= filt.depth(); ++n) {
        const auto& part = filt.level(n);
        for (std::size_t a = 0; a < part.size(); ++a) {
            const double parent = static_cast<double>(filt.level(n - 1)[filt.parent(n, a)].size());
            r = std::max(r, parent / static_cast<double>(part[a].size()));
        }
    }
    return r;
}

}  // namespace whl
