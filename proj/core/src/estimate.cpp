#include "pdq/estimate.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pdq/dists.hpp"
#include "pdq/error.hpp"

namespace pdq {

namespace {

constexpr double kGridEdge = 0.005;
constexpr double kWiden = 1.5;
constexpr int kMaxWiden = 5;

double epanechnikov(double t) { return std::abs(t) < 1.0 ? 0.75 * (1.0 - t * t) : 0.0; }

/// q/q'' of the reference quantile density.
double reference_ratio(ReferenceFamily family, double u) {
  const double pi = std::numbers::pi;
  if (family == ReferenceFamily::Cauchy) {
    const double c = 1.0 / std::tan(pi * u);
    return 1.0 / (2.0 * pi * pi * (3.0 * c * c + 1.0));
  }
  const double z = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
  const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * pi);
  return phi * phi / (2.0 * z * z + 3.0 * z + 2.0);
}

}  // namespace

EmpiricalSample::EmpiricalSample(std::vector<double> values, bool ties_allowed)
    : values_(std::move(values)), ties_allowed_(ties_allowed) {
  if (values_.empty()) throw Error(ErrorCode::EmptySample, "sample has no observations");
  for (double x : values_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidParameter, "sample contains a non-finite value");
  }
  std::sort(values_.begin(), values_.end());
  if (!ties_allowed_ && std::adjacent_find(values_.begin(), values_.end()) != values_.end()) {
    throw Error(ErrorCode::InvalidParameter, "sample contains ties");
  }
}

EmpiricalSample EmpiricalSample::from_frequencies(std::span<const double> values,
                                                  std::span<const std::size_t> counts) {
  if (values.size() != counts.size()) {
    throw Error(ErrorCode::InvalidParameter, "values and counts differ in length");
  }
  std::vector<double> x;
  for (std::size_t i = 0; i < values.size(); ++i) x.insert(x.end(), counts[i], values[i]);
  return EmpiricalSample(std::move(x));
}

double EmpiricalSample::mean() const noexcept {
  double s = 0.0;
  for (double x : values_) s += x;
  return s / static_cast<double>(values_.size());
}

double EmpiricalSample::median() const noexcept {
  const std::size_t n = values_.size();
  return n % 2 == 1 ? values_[n / 2] : 0.5 * (values_[n / 2 - 1] + values_[n / 2]);
}

std::vector<double> EmpiricalSample::distinct_values() const {
  std::vector<double> d;
  std::unique_copy(values_.begin(), values_.end(), std::back_inserter(d));
  return d;
}

std::vector<std::size_t> EmpiricalSample::counts() const {
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i == 0 || values_[i] != values_[i - 1]) {
      c.push_back(1);
    } else {
      ++c.back();
    }
  }
  return c;
}

EmpiricalSample EmpiricalSample::affine(double a, double b) const {
  if (!(b > 0.0)) throw Error(ErrorCode::InvalidParameter, "affine map needs a positive scale");
  std::vector<double> x(values_);
  for (double& v : x) v = a + b * v;
  return EmpiricalSample(std::move(x), ties_allowed_);
}

double BandwidthRule::operator()(double u) const {
  if (n == 0) throw Error(ErrorCode::EmptySample, "bandwidth rule for an empty sample");
  const double nd = static_cast<double>(n);
  double b = std::pow(15.0 / nd, 0.2) * std::pow(std::abs(reference_ratio(reference, u)), 0.4);
  if (!std::isfinite(b)) b = 0.25;
  // Keeping the kernel inside (0, 1) drops the X_(1), X_(n) boundary terms,
  // which makes the estimate exactly location invariant.
  const double hi = std::min({0.25, u, 1.0 - u});
  return std::clamp(b, std::min(1.0 / nd, hi), hi);
}

BandwidthRule default_rule(const EmpiricalSample& sample) {
  return {sample.min() > 0.0 ? ReferenceFamily::Lognormal : ReferenceFamily::Cauchy, sample.size()};
}

GridDensity empirical_pdq_discrete(const EmpiricalSample& sample, std::size_t m) {
  const auto counts = sample.counts();
  const double n = static_cast<double>(sample.size());
  double sum_sq = 0.0;
  for (std::size_t c : counts) sum_sq += static_cast<double>(c) * static_cast<double>(c);
  std::vector<double> breaks{0.0};
  std::vector<double> heights;
  std::size_t cum = 0;
  for (std::size_t c : counts) {
    cum += c;
    breaks.push_back(static_cast<double>(cum) / n);
    heights.push_back(n * static_cast<double>(c) / sum_sq);
  }
  breaks.back() = 1.0;
  return GridDensity::from_values(step_function_cells(breaks, heights, m));
}

double kernel_quantile_density(const EmpiricalSample& sample, double u, double b) {
  const std::size_t n = sample.size();
  if (n < 2) throw Error(ErrorCode::EmptySample, "kernel estimate needs at least two observations");
  if (!(u > 0.0 && u < 1.0) || !(b > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "kernel estimate needs u in (0,1) and b > 0");
  }
  const double nd = static_cast<double>(n);
  // Sum over spacings X_(i+1) - X_(i) weighted by k_b(u - i/n); only |u - i/n| < b contributes.
  const auto first = static_cast<std::size_t>(std::max(1.0, std::floor(nd * (u - b))));
  const auto last = static_cast<std::size_t>(std::min(nd - 1.0, std::ceil(nd * (u + b))));
  const auto x = sample.values();
  double q = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    const double spacing = x[i] - x[i - 1];
    if (spacing != 0.0) q += spacing * epanechnikov((u - static_cast<double>(i) / nd) / b);
  }
  // Boundary terms X_(1) k_b(u) - X_(n) k_b(u - 1), zero once b <= min(u, 1 - u).
  q += x.front() * epanechnikov(u / b) - x.back() * epanechnikov((u - 1.0) / b);
  return q / b;
}

double kernel_quantile_density(const EmpiricalSample& sample, const BandwidthRule& rule,
                               double u) {
  double b = rule(u);
  for (int attempt = 0;; ++attempt) {
    const double q = kernel_quantile_density(sample, u, b);
    if (q > 0.0) return q;
    if (attempt == kMaxWiden) {
      throw Error(ErrorCode::NonPositiveQuantileDensity,
                  "quantile density estimate is not positive at u = " + std::to_string(u));
    }
    b *= kWiden;
  }
}

GridDensity empirical_pdq_smooth(const EmpiricalSample& sample, const BandwidthRule& rule,
                                 std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidParameter, "grid size must be positive");
  std::vector<double> values(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double u = std::clamp((static_cast<double>(j) + 0.5) / static_cast<double>(m), kGridEdge,
                                1.0 - kGridEdge);
    values[j] = 1.0 / kernel_quantile_density(sample, rule, u);
  }
  return GridDensity::normalized(std::move(values));
}

}  // namespace pdq
