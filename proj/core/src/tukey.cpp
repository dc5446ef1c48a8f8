#include <cmath>
#include <numbers>
#include <string>

#include "pdq/dists.hpp"
#include "pdq/error.hpp"
#include "pdq/numeric.hpp"

namespace pdq {

double tukey_kappa(double lambda) {
  if (!std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidParameter, "tukey: lambda must be finite");
  }
  return numeric::integrate_unit([lambda](double u, double v) {
    return 1.0 / (std::pow(u, lambda - 1.0) + std::pow(v, lambda - 1.0));
  });
}

double tukey_kappa_approx(double lambda) {
  if (lambda <= 1.0) return std::pow(3.0, lambda) / 6.0;
  if (lambda <= 2.0) return lambda / 2.0;
  // The last branch is only accurate up to lambda = 6.
  return std::pow(std::numbers::pi / 2.0, lambda - 2.0);
}

}  // namespace pdq
