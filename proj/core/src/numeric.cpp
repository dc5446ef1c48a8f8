#include "pdq/numeric.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "pdq/error.hpp"

namespace pdq::numeric {

namespace {

boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  // The rule extends its abscissa tables lazily, so each thread gets its own.
  thread_local boost::math::quadrature::tanh_sinh<double> rule(12);
  return rule;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw Error(ErrorCode::QuadratureFailure, "empty or reversed interval");
  }
  auto guarded = [&](double x) {
    const double y = f(x);
    return std::isfinite(y) ? y : 0.0;
  };
  double err = 0.0;
  double l1 = 0.0;
  double result = 0.0;
  try {
    result = tanh_sinh_rule().integrate(guarded, a, b, rel_tol, &err, &l1);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::QuadratureFailure, e.what());
  }
  if (!std::isfinite(result) || err > std::max(1e-6 * l1, 1e-13)) {
    throw Error(ErrorCode::QuadratureFailure,
                "integral over [" + std::to_string(a) + ", " + std::to_string(b) +
                    "] did not converge (error estimate " + std::to_string(err) + ")");
  }
  return result;
}

double integrate_unit(const UnitFunction& h, double a, double b, double rel_tol) {
  double total = 0.0;
  if (a < 0.5) {
    const double hi = std::min(b, 0.5);
    total += integrate([&](double u) { return h(u, 1.0 - u); }, a, hi, rel_tol);
  }
  if (b > 0.5) {
    // u = 1 - t, so t runs over [1 - b, 1 - max(a, 1/2)].
    const double lo = std::max(a, 0.5);
    total += integrate([&](double t) { return h(1.0 - t, t); }, 1.0 - b, 1.0 - lo, rel_tol);
  }
  return total;
}

double cell_average(const UnitFunction& h, std::size_t j, std::size_t m) {
  const double md = static_cast<double>(m);
  if (j == 0 || j + 1 == m) {
    const double a = static_cast<double>(j) / md;
    const double b = static_cast<double>(j + 1) / md;
    return md * integrate_unit(h, a, b, 1e-9);
  }
  using Rule = boost::math::quadrature::gauss<double, 10>;
  if (static_cast<double>(j) + 0.5 < 0.5 * md) {
    const double a = static_cast<double>(j) / md;
    const double b = static_cast<double>(j + 1) / md;
    return md * Rule::integrate([&](double u) { return h(u, 1.0 - u); }, a, b);
  }
  // Upper half: integrate in t = 1 - u over [1 - (j+1)/m, 1 - j/m].
  const double a = static_cast<double>(m - j - 1) / md;
  const double b = static_cast<double>(m - j) / md;
  return md * Rule::integrate([&](double t) { return h(1.0 - t, t); }, a, b);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, std::size_t max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi) || !std::isfinite(flo) || !std::isfinite(fhi)) {
    throw Error(ErrorCode::RootNotBracketed,
                "no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  std::uintmax_t iters = max_iter;
  auto tol = [abs_tol](double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return std::abs(x - y) <= std::max(abs_tol, 8.0 * std::numeric_limits<double>::epsilon() * scale);
  };
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (a + b);
}

Minimum minimize(const std::function<double(double)>& f, double lo, double hi, int bits) {
  auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, bits);
  return {x, fx};
}

}  // namespace pdq::numeric
