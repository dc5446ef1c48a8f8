#pragma once

#include <limits>

#include "pdq/grid_density.hpp"

namespace pdq {

/// Returned by kl and sym_kl when the first density is not absolutely
/// continuous with respect to the second. Compares above every finite value.
inline constexpr double kInfiniteDivergence = std::numeric_limits<double>::infinity();

/// H = sqrt(0.5 * mean((sqrt(g1) - sqrt(g2))^2)), in [0, 1].
/// Throws Error(GridMismatch) when the grids differ in size.
double hellinger(const GridDensity& g1, const GridDensity& g2);

/// I(1:2) = mean(g1 ln(g1 / g2)) with 0 ln 0 = 0.
double kl(const GridDensity& g1, const GridDensity& g2);

/// J = I(1:2) + I(2:1).
double sym_kl(const GridDensity& g1, const GridDensity& g2);

}  // namespace pdq
