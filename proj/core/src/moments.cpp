#include <cmath>

#include "pdq/shape.hpp"

namespace pdq {

PdqMoments pdq_moments(const GridDensity& g) {
  const std::size_t m = g.size();
  const double md = static_cast<double>(m);
  // E[U] first, then central moments, both integrating the step density exactly.
  double mu = 0.0;
  for (std::size_t j = 0; j < m; ++j) mu += g[j] * g.midpoint(j);
  mu /= md;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double a = static_cast<double>(j) / md - mu;
    const double b = static_cast<double>(j + 1) / md - mu;
    const double a2 = a * a;
    const double b2 = b * b;
    c2 += g[j] * (b2 * b - a2 * a) / 3.0;
    c3 += g[j] * (b2 * b2 - a2 * a2) / 4.0;
    c4 += g[j] * (b2 * b2 * b - a2 * a2 * a) / 5.0;
  }
  const double sigma = std::sqrt(c2);
  return {mu, sigma, c3 / (c2 * sigma), c4 / (c2 * c2)};
}

}  // namespace pdq
