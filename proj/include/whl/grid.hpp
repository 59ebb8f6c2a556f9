#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace whl {

/// Number of finest cells at resolution N.
inline std::size_t cell_count(unsigned resolution) { return std::size_t{1} << resolution; }

/// Largest resolution any grid object accepts.
inline constexpr unsigned kMaxResolution = 24;

/**
 * A real function on [0,1) that is constant on the 2^N dyadic cells
 * [i 2^-N, (i+1) 2^-N). Entry i is the value on cell i.
 *
 * Values are immutable after construction; arithmetic returns new objects.
 * Two functions only combine at equal resolution (use refine() first).
 */
class GridFunction {
public:
    GridFunction() = default;

    /// The zero function at resolution N.
    explicit GridFunction(unsigned resolution);

    /// Throws std::invalid_argument on a size mismatch or a non-finite value.
    GridFunction(unsigned resolution, std::vector<double> values);

    static GridFunction constant(unsigned resolution, double c);
    static GridFunction indicator(unsigned resolution, std::span<const std::size_t> cells);
    /// Indicator of the dyadic interval [k 2^-level, (k+1) 2^-level).
    static GridFunction dyadic_indicator(unsigned resolution, unsigned level, std::size_t k);

    unsigned resolution() const { return resolution_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    /// Cell measure 2^-N.
    double cell_weight() const;

    /// Copy at a finer resolution by value replication.
    GridFunction refine(unsigned finer) const;

    double sup_norm() const;
    double mean() const;
    bool is_zero() const;

    GridFunction abs() const;

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
    /// Pointwise product.
    friend GridFunction operator*(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(double c, const GridFunction& a);
    friend GridFunction operator*(const GridFunction& a, double c) { return c * a; }

private:
    unsigned resolution_ = 0;
    std::vector<double> values_{0.0};
};

/// Max cellwise |a - b|. Throws on a resolution mismatch.
double max_abs_diff(const GridFunction& a, const GridFunction& b);

/// Throws std::invalid_argument unless both resolutions agree.
void require_same_resolution(unsigned a, unsigned b, const char* what);

/**
 * A variable exponent p(.), one positive value per finest cell.
 * Continuous formulas are sampled at cell left endpoints.
 */
class VariableExponent {
public:
    VariableExponent(unsigned resolution, std::vector<double> values);

    static VariableExponent constant(unsigned resolution, double p);
    /// p(x) = a + c x sampled at left endpoints.
    static VariableExponent affine(unsigned resolution, double a, double c);
    /// `left` on [0,1/2), `right` on [1/2,1). Needs resolution >= 1.
    static VariableExponent split(unsigned resolution, double left, double right);

    unsigned resolution() const { return resolution_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    double p_minus() const { return p_minus_; }
    double p_plus() const { return p_plus_; }
    /// min(p_-, 1)
    double underline_p() const { return p_minus_ < 1.0 ? p_minus_ : 1.0; }

    /// Exponent divided cellwise by a positive constant (p/t).
    VariableExponent scaled(double divisor) const;

private:
    unsigned resolution_;
    std::vector<double> values_;
    double p_minus_;
    double p_plus_;
};

}  // namespace whl
