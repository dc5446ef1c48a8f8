#pragma once

#include <cstddef>
#include <functional>

// Quadrature, root finding and 1-d minimization used throughout the library.
// Integrands on the unit interval are written as h(u, v) with v = 1 - u passed
// separately, so that evaluations next to u = 1 keep full relative precision.

namespace pdq::numeric {

using UnitFunction = std::function<double(double u, double v)>;

/// Adaptive tanh-sinh quadrature of f over [a, b]. Tolerates integrable
/// endpoint singularities; non-finite samples at the extreme abscissas are
/// dropped. Throws Error(QuadratureFailure) when the error estimate exceeds
/// rel_tol relative to the L1 norm.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

/// Integral of h over [a, b] within [0, 1]; the part above 1/2 is integrated
/// in the distance-to-one variable.
double integrate_unit(const UnitFunction& h, double a = 0.0, double b = 1.0,
                      double rel_tol = 1e-10);

/// m * integral of h over the j-th cell [j/m, (j+1)/m] (0-based j): the cell
/// average. Boundary cells use tanh-sinh, interior cells 10-point
/// Gauss-Legendre.
double cell_average(const UnitFunction& h, std::size_t j, std::size_t m);

/// Root of a monotone f bracketed by [lo, hi] (TOMS 748). Throws
/// Error(RootNotBracketed) if f(lo), f(hi) do not straddle zero.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-12, std::size_t max_iter = 200);

struct Minimum {
  double x;
  double value;
};

/// Brent minimization on [lo, hi] to roughly `bits` bits of precision in x.
Minimum minimize(const std::function<double(double)>& f, double lo, double hi,
                 int bits = 40);

}  // namespace pdq::numeric
