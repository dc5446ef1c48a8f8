#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdq/grid_density.hpp"

namespace pdq {

/// Grid used for smooth empirical pdQs: 100 cells with midpoints 0.005..0.995.
inline constexpr std::size_t kEmpiricalGridSize = 100;

/// A sorted sample X_(1) <= ... <= X_(n).
class EmpiricalSample {
 public:
  /// Sorts the values. Throws Error(EmptySample) for n = 0, Error(InvalidParameter)
  /// for non-finite values or, when ties are not allowed, repeated values.
  explicit EmpiricalSample(std::vector<double> values, bool ties_allowed = true);

  /// Expands (value, count) rows.
  static EmpiricalSample from_frequencies(std::span<const double> values,
                                          std::span<const std::size_t> counts);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  bool ties_allowed() const noexcept { return ties_allowed_; }

  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }
  double mean() const noexcept;
  double median() const noexcept;

  /// Distinct values and their multiplicities n_m.
  std::vector<double> distinct_values() const;
  std::vector<std::size_t> counts() const;

  /// Same sample mapped through x -> a + b x (b > 0).
  EmpiricalSample affine(double a, double b) const;

 private:
  std::vector<double> values_;
  bool ties_allowed_ = true;
};

enum class ReferenceFamily { Cauchy, Lognormal };

/// b(u) = (15/n)^(1/5) |q(u)/q''(u)|^(2/5) for the reference family's quantile
/// density q, clipped to [1/n, min(0.25, u, 1 - u)].
struct BandwidthRule {
  ReferenceFamily reference = ReferenceFamily::Lognormal;
  std::size_t n = 0;

  double operator()(double u) const;
};

/// Lognormal reference for all-positive data, Cauchy otherwise.
BandwidthRule default_rule(const EmpiricalSample& sample);

/// Step pdQ n * n_m / sum(n_m^2) on (c_{m-1}, c_m], cell-averaged onto m cells.
GridDensity empirical_pdq_discrete(const EmpiricalSample& sample, std::size_t m = 1000);

/// Epanechnikov kernel estimate of q(u) with bandwidth b, written as a
/// combination of order statistics. May be non-positive when b is too small.
double kernel_quantile_density(const EmpiricalSample& sample, double u, double b);

/// Same with b = rule(u), widened by 1.5 up to five times while the estimate
/// is non-positive. Throws Error(NonPositiveQuantileDensity) if that fails.
double kernel_quantile_density(const EmpiricalSample& sample, const BandwidthRule& rule,
                               double u);

/// f*_n(u) = 1 / (kappa_hat q_hat(u)) at the cell midpoints (clamped to
/// [0.005, 0.995]), with kappa_hat the Riemann sum of 1 / q_hat.
GridDensity empirical_pdq_smooth(const EmpiricalSample& sample, const BandwidthRule& rule,
                                 std::size_t m = kEmpiricalGridSize);

}  // namespace pdq
