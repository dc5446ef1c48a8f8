#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "pdq/dists.hpp"
#include "pdq/error.hpp"
#include "pdq/numeric.hpp"

namespace pdq {

namespace {

namespace bmp = boost::math::policies;
// Far-tail evaluations (u ~ 1e-300) overflow or underflow; return inf/0
// instead of throwing, the quadrature layer discards non-finite samples.
using TailPolicy = bmp::policy<bmp::overflow_error<bmp::errno_on_error>,
                               bmp::evaluation_error<bmp::errno_on_error>>;

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

constexpr std::array<std::string_view, 17> kFamilies = {
    "power",       "uniform",  "laplace",   "logistic", "extreme_value", "cauchy",
    "tukey",       "normal",   "lognormal", "pareto1",  "exponential",   "weibull",
    "gamma",       "student_t", "chisq",    "normal_mixture", "beta"};

double phi(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_quantile(double u, double v) {
  if (u <= v) return -kSqrt2 * boost::math::erfc_inv(2.0 * u, TailPolicy());
  return kSqrt2 * boost::math::erfc_inv(2.0 * v, TailPolicy());
}

/// -ln(1 - u) given both u and v = 1 - u.
double neg_log_v(double u, double v) { return u < 0.5 ? -std::log1p(-u) : -std::log(v); }

void require_arity(std::string_view name, std::span<const double> p, std::size_t n) {
  if (p.size() != n) {
    throw Error(ErrorCode::InvalidParameter, std::string(name) + " takes " + std::to_string(n) +
                                                 " shape parameter(s), got " +
                                                 std::to_string(p.size()));
  }
  for (double x : p) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::InvalidParameter, std::string(name) + ": non-finite parameter");
    }
  }
}

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

/// Solves cdf(x) = u (or sf(x) = v in the upper half) by bracketing then TOMS 748.
double invert_cdf(const std::function<double(double)>& cdf, const std::function<double(double)>& sf,
                  double u, double v) {
  const bool upper = v < u;
  const double target = upper ? v : u;
  // g increases in x for the lower half; for the upper half use -(sf - v).
  auto g = [&](double x) { return upper ? target - sf(x) : cdf(x) - target; };
  double lo = -1.0;
  double hi = 1.0;
  for (int i = 0; i < 2000 && g(lo) > 0.0; ++i) lo *= 2.0;
  for (int i = 0; i < 2000 && g(hi) < 0.0; ++i) hi *= 2.0;
  return numeric::find_root(g, lo, hi, 1e-13);
}

/// Numeric inverse of a monotone quantile function: returns (u, v) with Q(u, v) = x.
std::pair<double, double> invert_quantile(const std::function<double(double, double)>& quantile,
                                          double x) {
  const double mid = quantile(0.5, 0.5);
  if (x <= mid) {
    auto g = [&](double u) { return quantile(u, 1.0 - u) - x; };
    double lo = 0.25;
    while (lo > 1e-300 && g(lo) > 0.0) lo *= 1e-3;
    if (g(lo) > 0.0) return {0.0, 1.0};
    const double u = numeric::find_root(g, lo, 0.5, 0.0);
    return {u, 1.0 - u};
  }
  auto g = [&](double v) { return x - quantile(1.0 - v, v); };
  double lo = 0.25;
  while (lo > 1e-300 && g(lo) > 0.0) lo *= 1e-3;
  if (g(lo) > 0.0) return {1.0, 0.0};
  const double v = numeric::find_root(g, lo, 0.5, 0.0);
  return {1.0 - v, v};
}

ContinuousModel make_power(std::span<const double> p) {
  require_arity("power", p, 1);
  const double b = p[0];
  require(b > 0.0, ErrorCode::InvalidParameter, "power: b must be positive");
  require(b > 0.5, ErrorCode::NonSquareIntegrable, "power: b must exceed 1/2");
  ModelFunctions f;
  f.density = [b](double x) { return (x > 0.0 && x < 1.0) ? b * std::pow(x, b - 1.0) : 0.0; };
  f.cdf = [b](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : std::pow(x, b)); };
  f.quantile = [b](double u, double) { return std::pow(u, 1.0 / b); };
  f.density_quantile = [b](double u, double) { return b * std::pow(u, 1.0 - 1.0 / b); };
  f.kappa = b * b / (2.0 * b - 1.0);
  f.analytic_pdq = true;
  return ContinuousModel("power", {b}, std::move(f));
}

ContinuousModel make_laplace() {
  ModelFunctions f;
  f.density = [](double x) { return 0.5 * std::exp(-std::abs(x)); };
  f.cdf = [](double x) { return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x); };
  f.quantile = [](double u, double v) {
    return u <= 0.5 ? std::log(2.0 * u) : -std::log(2.0 * v);
  };
  f.density_quantile = [](double u, double v) { return std::min(u, v); };
  f.kappa = 0.25;
  f.analytic_pdq = true;
  return ContinuousModel("laplace", {}, std::move(f));
}

ContinuousModel make_logistic() {
  ModelFunctions f;
  f.density = [](double x) {
    const double e = std::exp(-std::abs(x));
    return e / ((1.0 + e) * (1.0 + e));
  };
  f.cdf = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  f.quantile = [](double u, double v) { return std::log(u / v); };
  f.density_quantile = [](double u, double v) { return u * v; };
  f.kappa = 1.0 / 6.0;
  f.analytic_pdq = true;
  return ContinuousModel("logistic", {}, std::move(f));
}

ContinuousModel make_extreme_value() {
  ModelFunctions f;
  f.density = [](double x) { return std::exp(-x - std::exp(-x)); };
  f.cdf = [](double x) { return std::exp(-std::exp(-x)); };
  // -ln(u) computed from v near u = 1.
  auto neg_log_u = [](double u, double v) { return u < 0.5 ? -std::log(u) : -std::log1p(-v); };
  f.quantile = [neg_log_u](double u, double v) { return -std::log(neg_log_u(u, v)); };
  f.density_quantile = [neg_log_u](double u, double v) { return u * neg_log_u(u, v); };
  f.kappa = 0.25;
  f.analytic_pdq = true;
  return ContinuousModel("extreme_value", {}, std::move(f));
}

ContinuousModel make_cauchy() {
  ModelFunctions f;
  f.density = [](double x) { return 1.0 / (kPi * (1.0 + x * x)); };
  f.cdf = [](double x) { return 0.5 + std::atan(x) / kPi; };
  f.quantile = [](double u, double v) {
    return u <= v ? -1.0 / std::tan(kPi * u) : 1.0 / std::tan(kPi * v);
  };
  f.density_quantile = [](double u, double v) {
    const double s = std::sin(kPi * std::min(u, v));
    return s * s / kPi;
  };
  f.kappa = 1.0 / (2.0 * kPi);
  f.analytic_pdq = true;
  return ContinuousModel("cauchy", {}, std::move(f));
}

ContinuousModel make_tukey(std::span<const double> p) {
  require_arity("tukey", p, 1);
  const double lambda = p[0];
  ModelFunctions f;
  f.quantile = [lambda](double u, double v) {
    if (lambda == 0.0) return std::log(u / v);
    return (std::pow(u, lambda) - std::pow(v, lambda)) / lambda;
  };
  f.density_quantile = [lambda](double u, double v) {
    return 1.0 / (std::pow(u, lambda - 1.0) + std::pow(v, lambda - 1.0));
  };
  const auto quantile = f.quantile;
  const auto dq = f.density_quantile;
  f.cdf = [lambda, quantile](double x) {
    if (lambda > 0.0 && x <= -1.0 / lambda) return 0.0;
    if (lambda > 0.0 && x >= 1.0 / lambda) return 1.0;
    return invert_quantile(quantile, x).first;
  };
  f.density = [lambda, quantile, dq](double x) {
    if (lambda > 0.0 && (x <= -1.0 / lambda || x >= 1.0 / lambda)) return 0.0;
    const auto [u, v] = invert_quantile(quantile, x);
    if (u <= 0.0 || v <= 0.0) return 0.0;
    return dq(u, v);
  };
  f.kappa = tukey_kappa(lambda);
  f.analytic_pdq = true;
  return ContinuousModel("tukey", {lambda}, std::move(f));
}

ContinuousModel make_normal() {
  ModelFunctions f;
  f.density = phi;
  f.cdf = normal_cdf;
  f.quantile = normal_quantile;
  f.density_quantile = [](double u, double v) { return phi(normal_quantile(u, v)); };
  f.kappa = 1.0 / (2.0 * std::sqrt(kPi));
  f.analytic_pdq = true;
  return ContinuousModel("normal", {}, std::move(f));
}

ContinuousModel make_lognormal() {
  ModelFunctions f;
  f.density = [](double x) { return x > 0.0 ? phi(std::log(x)) / x : 0.0; };
  f.cdf = [](double x) { return x > 0.0 ? normal_cdf(std::log(x)) : 0.0; };
  f.quantile = [](double u, double v) { return std::exp(normal_quantile(u, v)); };
  f.density_quantile = [](double u, double v) {
    const double z = normal_quantile(u, v);
    return phi(z) * std::exp(-z);
  };
  f.kappa = std::exp(0.25) / (2.0 * std::sqrt(kPi));
  f.analytic_pdq = true;
  return ContinuousModel("lognormal", {}, std::move(f));
}

ContinuousModel make_pareto1(std::span<const double> p) {
  require_arity("pareto1", p, 1);
  const double a = p[0];
  require(a > 0.0, ErrorCode::InvalidParameter, "pareto1: a must be positive");
  ModelFunctions f;
  f.density = [a](double x) { return x > 1.0 ? a * std::pow(x, -a - 1.0) : 0.0; };
  f.cdf = [a](double x) { return x > 1.0 ? 1.0 - std::pow(x, -a) : 0.0; };
  f.quantile = [a](double u, double v) {
    return u < 0.5 ? std::exp(-std::log1p(-u) / a) : std::pow(v, -1.0 / a);
  };
  f.density_quantile = [a](double, double v) { return a * std::pow(v, 1.0 + 1.0 / a); };
  f.kappa = a * a / (2.0 * a + 1.0);
  f.analytic_pdq = true;
  return ContinuousModel("pareto1", {a}, std::move(f));
}

ContinuousModel make_exponential() {
  ModelFunctions f;
  f.density = [](double x) { return x >= 0.0 ? std::exp(-x) : 0.0; };
  f.cdf = [](double x) { return x > 0.0 ? -std::expm1(-x) : 0.0; };
  f.quantile = neg_log_v;
  f.density_quantile = [](double, double v) { return v; };
  f.kappa = 0.5;
  f.analytic_pdq = true;
  return ContinuousModel("exponential", {}, std::move(f));
}

ContinuousModel make_weibull(std::span<const double> p) {
  require_arity("weibull", p, 1);
  const double beta = p[0];
  require(beta > 0.0, ErrorCode::InvalidParameter, "weibull: beta must be positive");
  require(beta > 0.5, ErrorCode::NonSquareIntegrable, "weibull: beta must exceed 1/2");
  ModelFunctions f;
  f.density = [beta](double x) {
    if (x <= 0.0) return 0.0;
    return beta * std::pow(x, beta - 1.0) * std::exp(-std::pow(x, beta));
  };
  f.cdf = [beta](double x) { return x > 0.0 ? -std::expm1(-std::pow(x, beta)) : 0.0; };
  f.quantile = [beta](double u, double v) { return std::pow(neg_log_v(u, v), 1.0 / beta); };
  f.density_quantile = [beta](double u, double v) {
    return beta * v * std::pow(neg_log_v(u, v), 1.0 - 1.0 / beta);
  };
  f.analytic_pdq = true;
  return ContinuousModel("weibull", {beta}, std::move(f));
}

ModelFunctions gamma_functions(double shape, double scale) {
  ModelFunctions f;
  f.density = [shape, scale](double x) {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p_derivative(shape, x / scale, TailPolicy()) / scale;
  };
  f.cdf = [shape, scale](double x) {
    return x > 0.0 ? boost::math::gamma_p(shape, x / scale, TailPolicy()) : 0.0;
  };
  f.quantile = [shape, scale](double u, double v) {
    if (u <= v) return scale * boost::math::gamma_p_inv(shape, u, TailPolicy());
    return scale * boost::math::gamma_q_inv(shape, v, TailPolicy());
  };
  return f;
}

ContinuousModel make_gamma(std::span<const double> p) {
  require_arity("gamma", p, 1);
  const double alpha = p[0];
  require(alpha > 0.0, ErrorCode::InvalidParameter, "gamma: shape must be positive");
  require(alpha > 0.5, ErrorCode::NonSquareIntegrable, "gamma: shape must exceed 1/2");
  return ContinuousModel("gamma", {alpha}, gamma_functions(alpha, 1.0));
}

ContinuousModel make_chisq(std::span<const double> p) {
  require_arity("chisq", p, 1);
  const double nu = p[0];
  require(nu > 0.0, ErrorCode::InvalidParameter, "chisq: degrees of freedom must be positive");
  require(nu > 1.0, ErrorCode::NonSquareIntegrable, "chisq: degrees of freedom must exceed 1");
  return ContinuousModel("chisq", {nu}, gamma_functions(0.5 * nu, 2.0));
}

ContinuousModel make_student_t(std::span<const double> p) {
  require_arity("student_t", p, 1);
  const double nu = p[0];
  require(nu > 0.0, ErrorCode::InvalidParameter, "student_t: degrees of freedom must be positive");
  using Dist = boost::math::students_t_distribution<double, TailPolicy>;
  const Dist dist(nu);
  ModelFunctions f;
  f.density = [dist](double x) { return std::isfinite(x) ? boost::math::pdf(dist, x) : 0.0; };
  f.cdf = [dist](double x) { return boost::math::cdf(dist, x); };
  f.quantile = [dist](double u, double v) {
    if (u <= v) return boost::math::quantile(dist, u);
    return boost::math::quantile(boost::math::complement(dist, v));
  };
  return ContinuousModel("student_t", {nu}, std::move(f));
}

ContinuousModel make_beta(std::span<const double> p) {
  require_arity("beta", p, 2);
  const double a = p[0];
  const double b = p[1];
  require(a > 0.0 && b > 0.0, ErrorCode::InvalidParameter, "beta: parameters must be positive");
  require(a > 0.5 && b > 0.5, ErrorCode::NonSquareIntegrable, "beta: parameters must exceed 1/2");
  ModelFunctions f;
  f.density = [a, b](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return boost::math::ibeta_derivative(a, b, x, TailPolicy());
  };
  f.cdf = [a, b](double x) {
    return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : boost::math::ibeta(a, b, x, TailPolicy()));
  };
  f.quantile = [a, b](double u, double v) {
    if (u <= v) return boost::math::ibeta_inv(a, b, u, TailPolicy());
    return boost::math::ibetac_inv(a, b, v, TailPolicy());
  };
  // Near either endpoint, evaluate through the reflected parameters so that
  // 1 - x does not lose precision.
  f.density_quantile = [a, b](double u, double v) {
    if (u <= v) {
      const double x = boost::math::ibeta_inv(a, b, u, TailPolicy());
      return x > 0.0 ? boost::math::ibeta_derivative(a, b, x, TailPolicy()) : 0.0;
    }
    const double y = boost::math::ibeta_inv(b, a, v, TailPolicy());
    return y > 0.0 ? boost::math::ibeta_derivative(b, a, y, TailPolicy()) : 0.0;
  };
  return ContinuousModel("beta", {a, b}, std::move(f));
}

ContinuousModel make_normal_mixture(std::span<const double> p) {
  require_arity("normal_mixture", p, 3);
  const double w = p[0];
  const double mu = p[1];
  const double sigma = p[2];
  require(w >= 0.0 && w <= 1.0, ErrorCode::InvalidParameter, "normal_mixture: weight must be in [0,1]");
  require(sigma > 0.0, ErrorCode::InvalidParameter, "normal_mixture: sigma must be positive");
  ModelFunctions f;
  f.density = [=](double x) { return (1.0 - w) * phi(x) + w * phi((x - mu) / sigma) / sigma; };
  f.cdf = [=](double x) { return (1.0 - w) * normal_cdf(x) + w * normal_cdf((x - mu) / sigma); };
  auto sf = [=](double x) { return (1.0 - w) * normal_cdf(-x) + w * normal_cdf((mu - x) / sigma); };
  f.quantile = [cdf = f.cdf, sf](double u, double v) { return invert_cdf(cdf, sf, u, v); };
  return ContinuousModel("normal_mixture", {w, mu, sigma}, std::move(f));
}

}  // namespace

std::span<const std::string_view> catalog_families() noexcept { return kFamilies; }

std::size_t family_arity(std::string_view name) {
  if (name == "power" || name == "tukey" || name == "pareto1" || name == "weibull" ||
      name == "gamma" || name == "student_t" || name == "chisq") {
    return 1;
  }
  if (name == "beta") return 2;
  if (name == "normal_mixture") return 3;
  if (std::find(kFamilies.begin(), kFamilies.end(), name) != kFamilies.end()) return 0;
  throw Error(ErrorCode::UnknownFamily, std::string(name));
}

ContinuousModel make_model(std::string_view name, std::initializer_list<double> shape_params) {
  const std::vector<double> p(shape_params);
  return make_model(name, std::span<const double>(p));
}

ContinuousModel make_model(std::string_view name, std::span<const double> p) {
  if (name == "power") return make_power(p);
  if (name == "tukey") return make_tukey(p);
  if (name == "pareto1") return make_pareto1(p);
  if (name == "weibull") return make_weibull(p);
  if (name == "gamma") return make_gamma(p);
  if (name == "student_t") return make_student_t(p);
  if (name == "chisq") return make_chisq(p);
  if (name == "beta") return make_beta(p);
  if (name == "normal_mixture") return make_normal_mixture(p);

  if (std::find(kFamilies.begin(), kFamilies.end(), name) == kFamilies.end()) {
    throw Error(ErrorCode::UnknownFamily, std::string(name));
  }
  require_arity(name, p, 0);
  if (name == "uniform") {
    const double one = 1.0;
    return make_power(std::span<const double>(&one, 1));
  }
  if (name == "laplace") return make_laplace();
  if (name == "logistic") return make_logistic();
  if (name == "extreme_value") return make_extreme_value();
  if (name == "cauchy") return make_cauchy();
  if (name == "normal") return make_normal();
  if (name == "lognormal") return make_lognormal();
  return make_exponential();
}

}  // namespace pdq
