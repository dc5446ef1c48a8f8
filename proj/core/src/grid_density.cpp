#include "pdq/grid_density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pdq/error.hpp"

namespace pdq {

namespace {

void check_values(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::InvalidDensity, "empty grid");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j]) || values[j] < 0.0) {
      throw Error(ErrorCode::InvalidDensity,
                  "value " + std::to_string(values[j]) + " at cell " + std::to_string(j));
    }
  }
}

double riemann_mass(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

GridDensity GridDensity::from_values(std::vector<double> values) {
  check_values(values);
  const double mass = riemann_mass(values);
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw Error(ErrorCode::InvalidDensity, "grid mass " + std::to_string(mass) + " is not 1");
  }
  return GridDensity(std::move(values));
}

GridDensity GridDensity::normalized(std::vector<double> values) {
  check_values(values);
  const double mass = riemann_mass(values);
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidDensity, "zero mass");
  for (double& v : values) v /= mass;
  return GridDensity(std::move(values));
}

GridDensity GridDensity::uniform(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidDensity, "empty grid");
  return GridDensity(std::vector<double>(m, 1.0));
}

double GridDensity::mass() const noexcept { return riemann_mass(values_); }

GridDensity GridDensity::reflected() const {
  std::vector<double> r(values_.rbegin(), values_.rend());
  return GridDensity(std::move(r));
}

std::vector<double> grid_midpoints(std::size_t m) {
  std::vector<double> u(m);
  for (std::size_t j = 0; j < m; ++j) u[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
  return u;
}

}  // namespace pdq
