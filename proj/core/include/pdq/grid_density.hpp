#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pdq {

/// A probability density on (0,1) represented on m equal cells. Cell j
/// (0-based) covers [j/m, (j+1)/m] and its midpoint is u_j = (j + 0.5)/m.
/// Values are cell averages of the density, so (1/m) * sum(values) is the
/// total mass, kept at 1 within kMassTolerance.
class GridDensity {
 public:
  static constexpr double kMassTolerance = 1e-6;

  /// Takes values as given; throws Error(InvalidDensity) if any value is
  /// negative or non-finite, or if the mass is not 1 within kMassTolerance.
  static GridDensity from_values(std::vector<double> values);

  /// Rescales non-negative values to unit mass.
  static GridDensity normalized(std::vector<double> values);

  static GridDensity uniform(std::size_t m);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }

  double midpoint(std::size_t j) const noexcept {
    return (static_cast<double>(j) + 0.5) / static_cast<double>(values_.size());
  }

  /// Riemann sum (1/m) * sum(values).
  double mass() const noexcept;

  /// The density of 1 - U: cell j maps to cell m - 1 - j.
  GridDensity reflected() const;

 private:
  explicit GridDensity(std::vector<double> values) : values_(std::move(values)) {}

  std::vector<double> values_;
};

std::vector<double> grid_midpoints(std::size_t m);

}  // namespace pdq
