#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace whl {

/// Identifies one atom of a filtration: level n and its position in that level's list.
struct AtomId {
    unsigned level = 0;
    std::size_t index = 0;

    friend bool operator==(const AtomId&, const AtomId&) = default;
};

/**
 * A finite filtration F_0 ⊂ ... ⊂ F_N on the 2^N finest cells, each level a
 * partition of the cells into atoms.
 *
 * Invariants checked on construction: level 0 is the single atom of all cells,
 * each level refines the previous one, and level N consists of singletons.
 */
class DyadicFiltration {
public:
    using Atom = std::vector<std::size_t>;
    using Partition = std::vector<Atom>;

    /// Throws std::invalid_argument when the levels violate the invariants.
    DyadicFiltration(unsigned resolution, std::vector<Partition> levels);

    /// F_n generated by [j 2^-n, (j+1) 2^-n).
    static DyadicFiltration dyadic(unsigned resolution);

    unsigned resolution() const { return resolution_; }
    std::size_t cell_count() const { return cells_; }
    /// Number of levels minus one (always equal to the resolution).
    unsigned depth() const { return resolution_; }
    bool is_dyadic() const { return dyadic_; }

    const Partition& level(unsigned n) const { return levels_.at(n); }
    const Atom& atom(AtomId id) const { return levels_.at(id.level).at(id.index); }

    /// Index of the level-n atom containing `cell`.
    std::size_t atom_of(unsigned n, std::size_t cell) const { return atom_of_[n][cell]; }
    /// Index of the level-(n-1) atom containing level-n atom `index` (n >= 1).
    std::size_t parent(unsigned n, std::size_t index) const { return parent_[n][index]; }

    /// P(A) = |A| 2^-N.
    double measure(AtomId id) const;

private:
    unsigned resolution_;
    std::size_t cells_;
    bool dyadic_ = false;
    std::vector<Partition> levels_;
    std::vector<std::vector<std::size_t>> atom_of_;
    std::vector<std::vector<std::size_t>> parent_;
};

using FiltrationPtr = std::shared_ptr<const DyadicFiltration>;

inline FiltrationPtr make_dyadic(unsigned resolution)
{
    return std::make_shared<const DyadicFiltration>(DyadicFiltration::dyadic(resolution));
}

/// max over n >= 1 and level-n atoms A of P(parent(A)) / P(A); 1 for depth 0.
double regularity_constant(const DyadicFiltration& filt);

}  // namespace whl
