#include "whl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace whl {

namespace {

void check_resolution(unsigned resolution)
{
    if (resolution > kMaxResolution) {
        throw std::invalid_argument("resolution " + std::to_string(resolution) + " exceeds "
                                    + std::to_string(kMaxResolution));
    }
}

}  // namespace

void require_same_resolution(unsigned a, unsigned b, const char* what)
{
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": resolution mismatch ("
                                    + std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

GridFunction::GridFunction(unsigned resolution)
    : resolution_(resolution)
{
    check_resolution(resolution);
    values_.assign(cell_count(resolution), 0.0);
}

GridFunction::GridFunction(unsigned resolution, std::vector<double> values)
    : resolution_(resolution), values_(std::move(values))
{
    check_resolution(resolution);
    if (values_.size() != cell_count(resolution)) {
        throw std::invalid_argument("GridFunction: expected " + std::to_string(cell_count(resolution))
                                    + " values, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite value");
    }
}

GridFunction GridFunction::constant(unsigned resolution, double c)
{
    return GridFunction(resolution, std::vector<double>(cell_count(resolution), c));
}

GridFunction GridFunction::indicator(unsigned resolution, std::span<const std::size_t> cells)
{
    std::vector<double> v(cell_count(resolution), 0.0);
    for (std::size_t c : cells) {
        if (c >= v.size()) throw std::out_of_range("GridFunction::indicator: cell index out of range");
        v[c] = 1.0;
    }
    return GridFunction(resolution, std::move(v));
}

GridFunction GridFunction::dyadic_indicator(unsigned resolution, unsigned level, std::size_t k)
{
    if (level > resolution || k >= cell_count(level)) {
        throw std::out_of_range("GridFunction::dyadic_indicator: interval not resolvable");
    }
    std::vector<double> v(cell_count(resolution), 0.0);
    const std::size_t width = cell_count(resolution - level);
    std::fill(v.begin() + static_cast<std::ptrdiff_t>(k * width),
              v.begin() + static_cast<std::ptrdiff_t>((k + 1) * width), 1.0);
    return GridFunction(resolution, std::move(v));
}

double GridFunction::cell_weight() const { return std::ldexp(1.0, -static_cast<int>(resolution_)); }

GridFunction GridFunction::refine(unsigned finer) const
{
    if (finer < resolution_) throw std::invalid_argument("GridFunction::refine: target is coarser");
    const std::size_t rep = cell_count(finer - resolution_);
    std::vector<double> v;
    v.reserve(values_.size() * rep);
    for (double x : values_) v.insert(v.end(), rep, x);
    return GridFunction(finer, std::move(v));
}

double GridFunction::sup_norm() const
{
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::mean() const
{
    double s = 0.0;
    for (double v : values_) s += v;
    return s * cell_weight();
}

bool GridFunction::is_zero() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::abs() const
{
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](double x) { return std::abs(x); });
    return GridFunction(resolution_, std::move(v));
}

namespace {

template <typename Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op, const char* what)
{
    require_same_resolution(a.resolution(), b.resolution(), what);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
    return GridFunction(a.resolution(), std::move(v));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b)
{
    return zip(a, b, std::plus<>{}, "GridFunction +");
}

GridFunction operator-(const GridFunction& a, const GridFunction& b)
{
    return zip(a, b, std::minus<>{}, "GridFunction -");
}

GridFunction operator*(const GridFunction& a, const GridFunction& b)
{
    return zip(a, b, std::multiplies<>{}, "GridFunction *");
}

GridFunction operator*(double c, const GridFunction& a)
{
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a[i];
    return GridFunction(a.resolution(), std::move(v));
}

double max_abs_diff(const GridFunction& a, const GridFunction& b)
{
    require_same_resolution(a.resolution(), b.resolution(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

VariableExponent::VariableExponent(unsigned resolution, std::vector<double> values)
    : resolution_(resolution), values_(std::move(values))
{
    check_resolution(resolution);
    if (values_.size() != cell_count(resolution)) {
        throw std::invalid_argument("VariableExponent: expected " + std::to_string(cell_count(resolution))
                                    + " values, got " + std::to_string(values_.size()));
    }
    for (double p : values_) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw std::domain_error("VariableExponent: values must be positive and finite");
        }
    }
    const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    p_minus_ = *lo;
    p_plus_ = *hi;
}

VariableExponent VariableExponent::constant(unsigned resolution, double p)
{
    return VariableExponent(resolution, std::vector<double>(cell_count(resolution), p));
}

VariableExponent VariableExponent::affine(unsigned resolution, double a, double c)
{
    const std::size_t n = cell_count(resolution);
    std::vector<double> v(n);
    const double h = std::ldexp(1.0, -static_cast<int>(resolution));
    for (std::size_t i = 0; i < n; ++i) v[i] = a + c * (static_cast<double>(i) * h);
    return VariableExponent(resolution, std::move(v));
}

VariableExponent VariableExponent::split(unsigned resolution, double left, double right)
{
    if (resolution == 0) throw std::invalid_argument("VariableExponent::split: needs resolution >= 1");
    const std::size_t n = cell_count(resolution);
    std::vector<double> v(n, right);
    std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2), left);
    return VariableExponent(resolution, std::move(v));
}

VariableExponent VariableExponent::scaled(double divisor) const
{
    if (!(divisor > 0.0)) throw std::domain_error("VariableExponent::scaled: divisor must be positive");
    std::vector<double> v(values_);
    for (double& p : v) p /= divisor;
    return VariableExponent(resolution_, std::move(v));
}

}  // namespace whl
