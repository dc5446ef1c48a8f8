#include "pdq/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdq/error.hpp"

namespace pdq {

namespace {

void require_same_grid(const GridDensity& g1, const GridDensity& g2) {
  if (g1.size() != g2.size()) {
    throw Error(ErrorCode::GridMismatch,
                "grids of size " + std::to_string(g1.size()) + " and " + std::to_string(g2.size()));
  }
}

}  // namespace

double hellinger(const GridDensity& g1, const GridDensity& g2) {
  require_same_grid(g1, g2);
  double s = 0.0;
  for (std::size_t j = 0; j < g1.size(); ++j) {
    const double d = std::sqrt(g1[j]) - std::sqrt(g2[j]);
    s += d * d;
  }
  return std::min(1.0, std::sqrt(0.5 * s / static_cast<double>(g1.size())));
}

double kl(const GridDensity& g1, const GridDensity& g2) {
  require_same_grid(g1, g2);
  double s = 0.0;
  for (std::size_t j = 0; j < g1.size(); ++j) {
    if (g1[j] == 0.0) continue;
    if (g2[j] == 0.0) return kInfiniteDivergence;
    s += g1[j] * std::log(g1[j] / g2[j]);
  }
  return std::max(0.0, s / static_cast<double>(g1.size()));
}

double sym_kl(const GridDensity& g1, const GridDensity& g2) {
  const double a = kl(g1, g2);
  if (a == kInfiniteDivergence) return a;
  return a + kl(g2, g1);
}

}  // namespace pdq
