#pragma once

#include <span>

namespace whl::lab {

/// Ordinary least-squares slope of y on x. Throws std::invalid_argument for fewer than two points.
double ols_slope(std::span<const double> x, std::span<const double> y);

}  // namespace whl::lab
