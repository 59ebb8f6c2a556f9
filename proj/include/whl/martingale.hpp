#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "whl/filtration.hpp"
#include "whl/grid.hpp"

namespace whl {

/// E_n f: average over each level-n atom, broadcast back to the cells.
GridFunction cond_expectation(const GridFunction& f, const DyadicFiltration& filt, unsigned n);

/**
 * A closed martingale f_n = E_n(terminal), n = 0..N, with f_{-1} = 0.
 *
 * All levels are computed once at construction; the object is immutable.
 */
class Martingale {
public:
    Martingale(FiltrationPtr filtration, GridFunction terminal);

    const DyadicFiltration& filtration() const { return *filtration_; }
    const FiltrationPtr& filtration_ptr() const { return filtration_; }
    unsigned depth() const { return filtration_->depth(); }
    const GridFunction& terminal() const { return levels_.back(); }

    /// f_n; levels beyond N return the terminal.
    const GridFunction& level(unsigned n) const;
    /// d_n f = f_n - f_{n-1}; d_0 f = f_0, zero for n > N.
    GridFunction difference(unsigned n) const;

private:
    FiltrationPtr filtration_;
    std::vector<GridFunction> levels_;
};

/// sup over 0 <= n <= upto of |f_n|; nullopt means every level.
GridFunction doob_maximal(const Martingale& m, std::optional<unsigned> upto = std::nullopt);

/// S_m(f) = (sum_{n<=m} |d_n f|^2)^(1/2); nullopt gives S(f).
GridFunction square_function(const Martingale& m, std::optional<unsigned> upto = std::nullopt);

/// s_m(f) = (sum_{n<=m} E_{n-1}|d_n f|^2)^(1/2) with E_{-1} = E_0; nullopt gives s(f).
GridFunction cond_square_function(const Martingale& m, std::optional<unsigned> upto = std::nullopt);

/**
 * A stopping time with values in {0, ..., N, inf}, stored per cell.
 * Measurability ({tau = n} is a union of level-n atoms) is checked on construction.
 */
class StoppingTime {
public:
    static constexpr int kNever = std::numeric_limits<int>::max();

    /// Throws std::domain_error if some value is out of range or {tau = n} is not F_n-measurable.
    StoppingTime(const DyadicFiltration& filt, std::vector<int> values);

    static StoppingTime constant(const DyadicFiltration& filt, int value);

    std::size_t size() const { return values_.size(); }
    int operator[](std::size_t cell) const { return values_[cell]; }
    const std::vector<int>& values() const { return values_; }

    bool is_finite(std::size_t cell) const { return values_[cell] != kNever; }
    /// Cells with tau < inf.
    std::vector<std::size_t> finite_cells() const;

    friend bool operator==(const StoppingTime&, const StoppingTime&) = default;

private:
    std::vector<int> values_;
};

/// f^tau with level-n function f_{n ∧ tau}; its terminal is f_{N ∧ tau}.
Martingale stopped_martingale(const Martingale& m, const StoppingTime& tau);

/**
 * (T_b f)_n = sum_{k=1}^n b_{k-1} d_k f.
 *
 * `multipliers` holds b_0 .. b_{N-1}; b_k must be F_k-measurable with |b_k| <= 1.
 * Throws std::domain_error otherwise.
 */
Martingale martingale_transform(const Martingale& m, const std::vector<GridFunction>& multipliers);

/**
 * (sum_n |E_n theta_n|^r)^(1/r) for theta_0 .. theta_m, m <= N. With r = 1 this is the
 * left side of the dual Doob inequality; r = 2 gives Stein's form. Throws
 * std::domain_error for r < 1 or too many terms.
 */
GridFunction conditional_sum(const std::vector<GridFunction>& thetas, const DyadicFiltration& filt, double r = 1.0);

/// (sum_n |theta_n|^r)^(1/r), the matching right-hand side.
GridFunction power_sum(const std::vector<GridFunction>& thetas, double r = 1.0);

/// True when g is constant on every level-n atom.
bool is_measurable(const GridFunction& g, const DyadicFiltration& filt, unsigned n);

}  // namespace whl
