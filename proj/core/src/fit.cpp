#include "pdq/fit.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pdq/divergence.hpp"
#include "pdq/error.hpp"

namespace pdq {

namespace {

constexpr int kMaxNewton = 200;

std::vector<double> grid_points(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::InvalidParameter, "shape grid needs lo <= hi and a positive step");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> x(count + 1);
  for (std::size_t i = 0; i <= count; ++i) x[i] = lo + static_cast<double>(i) * step;
  return x;
}

void require_one_parameter(std::string_view family) {
  if (family_arity(family) != 1) {
    throw Error(ErrorCode::InvalidParameter,
                "family '" + std::string(family) + "' does not have a single shape parameter");
  }
}

bool infeasible(const Error& e) {
  return e.code() == ErrorCode::NonSquareIntegrable || e.code() == ErrorCode::InvalidParameter ||
         e.code() == ErrorCode::QuadratureFailure;
}

/// Two-stage search minimizing objective(shape); objective returns nullopt for
/// infeasible shapes.
template <class Objective>
FitResult grid_search(std::string_view family, FitMethod method, const ShapeGrid& grid,
                      bool keep_trace, Objective objective) {
  FitResult r{std::string(family), method, 0.0, 0.0, 1.0, 0.0, 0.0, {}, {}};
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  auto visit = [&](double shape) {
    const std::optional<double> v = objective(shape);
    if (!v) {
      r.skipped_shapes.push_back(shape);
      return;
    }
    if (keep_trace) r.objective_trace.emplace_back(shape, *v);
    if (!found || *v < best) {
      best = *v;
      r.shape = shape;
      found = true;
    }
  };
  for (double s : grid_points(grid.lo, grid.hi, grid.step)) visit(s);
  if (!found) {
    throw Error(ErrorCode::EmptyFeasibleGrid, "no valid shape for '" + std::string(family) + "' on the grid");
  }
  if (grid.fine_step > 0.0 && grid.fine_step < grid.step) {
    const double centre = r.shape;
    const double lo = std::max(grid.lo, centre - grid.step);
    const double hi = std::min(grid.hi, centre + grid.step);
    for (double s : grid_points(lo, hi, grid.fine_step)) {
      if (std::abs(s - centre) > 1e-12) visit(s);
    }
  }
  r.objective = best;
  return r;
}

void set_location_scale(FitResult& r, const EmpiricalSample& sample) {
  const auto [location, scale] = locscale_regression(sample, make_model(r.family, {r.shape}));
  r.location = location;
  r.scale = scale;
}

double hellinger_to_model(const GridDensity& empirical, std::string_view family,
                          std::initializer_list<double> shape) {
  return hellinger(empirical, pdq(make_model(family, shape), empirical.size()));
}

GridDensity empirical_for(const EmpiricalSample& sample, const FitOptions& options) {
  return empirical_pdq_smooth(sample, options.rule.value_or(default_rule(sample)), options.m);
}

void require_positive(const EmpiricalSample& sample) {
  if (!(sample.min() > 0.0)) {
    throw Error(ErrorCode::NonPositiveData, "maximum likelihood needs all observations positive");
  }
}

}  // namespace

std::string_view to_string(FitMethod m) noexcept {
  switch (m) {
    case FitMethod::Hpdq: return "hpdq";
    case FitMethod::Ppcc: return "ppcc";
    case FitMethod::Mle: return "mle";
  }
  return "unknown";
}

FitMethod parse_fit_method(std::string_view name) {
  if (name == "hpdq") return FitMethod::Hpdq;
  if (name == "ppcc") return FitMethod::Ppcc;
  if (name == "mle") return FitMethod::Mle;
  throw Error(ErrorCode::InvalidParameter, "unknown fit method '" + std::string(name) + "'");
}

ShapeGrid default_shape_grid(std::string_view family) {
  if (family == "tukey") return {-10.0, 10.0, 0.2, 0.01};
  if (family == "gamma") return {2.0, 60.0, 0.5, 0.05};
  if (family == "weibull") return {0.1, 10.0, 0.1, 0.01};
  if (family == "student_t") return {0.5, 50.0, 0.5, 0.01};
  if (family == "chisq") return {1.0, 100.0, 1.0, 0.05};
  if (family == "pareto1") return {0.1, 10.0, 0.1, 0.01};
  if (family == "power") return {0.1, 10.0, 0.1, 0.01};
  require_one_parameter(family);
  return {0.1, 10.0, 0.1, 0.01};
}

std::vector<double> plotting_positions(std::size_t n) {
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return u;
}

std::pair<double, double> locscale_regression(const EmpiricalSample& sample,
                                              const ContinuousModel& model) {
  const std::size_t n = sample.size();
  const auto u = plotting_positions(n);
  std::vector<double> q(n);
  double qbar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = model.quantile(u[i], 1.0 - u[i]);
    qbar += q[i];
  }
  qbar /= static_cast<double>(n);
  const double xbar = sample.mean();
  double sqq = 0.0;
  double sqx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sqq += (q[i] - qbar) * (q[i] - qbar);
    sqx += (q[i] - qbar) * (sample[i] - xbar);
  }
  if (!(sqq > 0.0) || !std::isfinite(sqq)) {
    throw Error(ErrorCode::DegenerateRegressor, "model quantiles do not vary");
  }
  const double slope = sqx / sqq;
  if (!(slope > 0.0)) throw Error(ErrorCode::DegenerateRegressor, "non-positive fitted scale");
  return {xbar - slope * qbar, slope};
}

FitResult hpdq_fit(const GridDensity& empirical, std::string_view family, const ShapeGrid& grid,
                   bool keep_trace) {
  require_one_parameter(family);
  FitResult r = grid_search(family, FitMethod::Hpdq, grid, keep_trace,
                            [&](double shape) -> std::optional<double> {
                              try {
                                return hellinger_to_model(empirical, family, {shape});
                              } catch (const Error& e) {
                                if (infeasible(e)) return std::nullopt;
                                throw;
                              }
                            });
  r.distance_h = r.objective;
  return r;
}

FitResult hpdq_fit(const EmpiricalSample& sample, std::string_view family, const ShapeGrid& grid,
                   const FitOptions& options) {
  FitResult r = hpdq_fit(empirical_for(sample, options), family, grid, options.keep_trace);
  set_location_scale(r, sample);
  return r;
}

FitResult ppcc_fit(const EmpiricalSample& sample, std::string_view family, const ShapeGrid& grid,
                   const FitOptions& options) {
  require_one_parameter(family);
  const std::size_t n = sample.size();
  if (n < 3) throw Error(ErrorCode::EmptySample, "ppcc needs at least three observations");
  const auto u = plotting_positions(n);
  const double xbar = sample.mean();
  double sxx = 0.0;
  for (double x : sample.values()) sxx += (x - xbar) * (x - xbar);
  std::vector<double> q(n);
  // Minimize the negative correlation.
  FitResult r = grid_search(family, FitMethod::Ppcc, grid, options.keep_trace,
                            [&](double shape) -> std::optional<double> {
                              try {
                                const ContinuousModel model = make_model(family, {shape});
                                double qbar = 0.0;
                                for (std::size_t i = 0; i < n; ++i) {
                                  q[i] = model.quantile(u[i], 1.0 - u[i]);
                                  qbar += q[i];
                                }
                                qbar /= static_cast<double>(n);
                                double sqq = 0.0;
                                double sqx = 0.0;
                                for (std::size_t i = 0; i < n; ++i) {
                                  sqq += (q[i] - qbar) * (q[i] - qbar);
                                  sqx += (q[i] - qbar) * (sample[i] - xbar);
                                }
                                const double rho = sqx / std::sqrt(sqq * sxx);
                                if (!std::isfinite(rho)) return std::nullopt;
                                return -rho;
                              } catch (const Error& e) {
                                if (infeasible(e)) return std::nullopt;
                                throw;
                              }
                            });
  r.objective = -r.objective;
  for (auto& t : r.objective_trace) t.second = -t.second;
  set_location_scale(r, sample);
  try {
    r.distance_h = hellinger_to_model(empirical_for(sample, options), family, {r.shape});
  } catch (const Error& e) {
    if (!infeasible(e)) throw;
    r.distance_h = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

FitResult mle_fit_weibull(const EmpiricalSample& sample, const FitOptions& options) {
  require_positive(sample);
  const std::size_t n = sample.size();
  // The shape estimate is scale free; work with x / max(x) to avoid overflow.
  const double xmax = sample.max();
  std::vector<double> ly(n);
  double mean_ly = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ly[i] = std::log(sample[i] / xmax);
    mean_ly += ly[i];
  }
  mean_ly /= static_cast<double>(n);
  // Profile score g(beta) = 1/beta + mean(ln y) - sum(y^b ln y) / sum(y^b), decreasing.
  auto score = [&](double beta, double* deriv) {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (double l : ly) {
      const double w = std::exp(beta * l);
      s0 += w;
      s1 += w * l;
      s2 += w * l * l;
    }
    if (deriv) *deriv = -1.0 / (beta * beta) - (s2 * s0 - s1 * s1) / (s0 * s0);
    return 1.0 / beta + mean_ly - s1 / s0;
  };
  double lo = 1e-3;
  double hi = 1.0;
  while (score(hi, nullptr) > 0.0) {
    hi *= 2.0;
    if (hi > 1e6) throw Error(ErrorCode::NonConvergence, "Weibull shape estimate diverges");
  }
  if (score(lo, nullptr) < 0.0) throw Error(ErrorCode::NonConvergence, "Weibull shape below 1e-3");
  double beta = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < kMaxNewton; ++it) {
    double d = 0.0;
    const double g = score(beta, &d);
    if (g > 0.0) lo = beta; else hi = beta;
    double next = beta - g / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - beta) <= 1e-12 * beta) {
      beta = next;
      converged = true;
      break;
    }
    beta = next;
  }
  if (!converged) throw Error(ErrorCode::NonConvergence, "Weibull likelihood equation");
  double s0 = 0.0;
  for (double l : ly) s0 += std::exp(beta * l);
  const double scale = xmax * std::pow(s0 / static_cast<double>(n), 1.0 / beta);

  FitResult r{"weibull", FitMethod::Mle, beta, 0.0, scale, 0.0, 0.0, {}, {}};
  double loglik = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = sample[i] / scale;
    loglik += std::log(beta / scale) + (beta - 1.0) * std::log(z) - std::pow(z, beta);
  }
  r.objective = loglik;
  try {
    r.distance_h = hellinger_to_model(empirical_for(sample, options), "weibull", {beta});
  } catch (const Error& e) {
    if (!infeasible(e)) throw;
    r.distance_h = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

FitResult mle_fit_gamma(const EmpiricalSample& sample, const FitOptions& options) {
  require_positive(sample);
  const std::size_t n = sample.size();
  const double mean = sample.mean();
  double mean_log = 0.0;
  for (double x : sample.values()) mean_log += std::log(x);
  mean_log /= static_cast<double>(n);
  const double s = std::log(mean) - mean_log;
  if (!(s > 0.0)) throw Error(ErrorCode::NonConvergence, "gamma likelihood has no finite maximum");
  // ln(alpha) - digamma(alpha) = s, decreasing in alpha.
  double alpha = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  bool converged = false;
  for (int it = 0; it < kMaxNewton; ++it) {
    const double g = std::log(alpha) - boost::math::digamma(alpha) - s;
    const double d = 1.0 / alpha - boost::math::trigamma(alpha);
    double next = alpha - g / d;
    if (!(next > 0.0)) next = 0.5 * alpha;
    if (std::abs(next - alpha) <= 1e-12 * alpha) {
      alpha = next;
      converged = true;
      break;
    }
    alpha = next;
  }
  if (!converged) throw Error(ErrorCode::NonConvergence, "gamma likelihood equation");
  const double scale = mean / alpha;
  FitResult r{"gamma", FitMethod::Mle, alpha, 0.0, scale, 0.0, 0.0, {}, {}};
  r.objective = static_cast<double>(n) *
                ((alpha - 1.0) * mean_log - mean / scale - std::lgamma(alpha) - alpha * std::log(scale));
  try {
    r.distance_h = hellinger_to_model(empirical_for(sample, options), "gamma", {alpha});
  } catch (const Error& e) {
    if (!infeasible(e)) throw;
    r.distance_h = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

FitResult fit(const EmpiricalSample& sample, std::string_view family, FitMethod method,
              const ShapeGrid& grid, const FitOptions& options) {
  switch (method) {
    case FitMethod::Hpdq: return hpdq_fit(sample, family, grid, options);
    case FitMethod::Ppcc: return ppcc_fit(sample, family, grid, options);
    case FitMethod::Mle:
      if (family == "weibull") return mle_fit_weibull(sample, options);
      if (family == "gamma") return mle_fit_gamma(sample, options);
      throw Error(ErrorCode::InvalidParameter, "maximum likelihood is available for weibull and gamma only");
  }
  throw Error(ErrorCode::InvalidParameter, "unknown fit method");
}

}  // namespace pdq
