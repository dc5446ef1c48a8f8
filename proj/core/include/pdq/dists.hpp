#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdq/grid_density.hpp"

namespace pdq {

inline constexpr std::size_t kDefaultGridSize = 1000;

enum class Side { Left, Right };

/// Primitives of a family member in standard coordinates (location 0, scale 1).
/// Quantile-scale functions take (u, v) with v = 1 - u supplied by the caller so
/// that upper-tail evaluations keep relative precision.
struct ModelFunctions {
  std::function<double(double x)> density;
  std::function<double(double x)> cdf;
  std::function<double(double u, double v)> quantile;
  /// f(Q(u)). Either a closed form or density composed with quantile.
  std::function<double(double u, double v)> density_quantile;
  /// Closed-form integral of f^2 if known; otherwise it is integrated.
  std::optional<double> kappa;
  /// True when density_quantile is a closed form, i.e. f* is analytic up to kappa.
  bool analytic_pdq = false;
};

/// A continuous location-scale family member with a square-integrable density.
/// Immutable; copies share the underlying primitives.
class ContinuousModel {
 public:
  /// Validates the primitives and fixes kappa (closed form or quadrature).
  ContinuousModel(std::string name, std::vector<double> shape_params, ModelFunctions fns);

  const std::string& name() const noexcept { return name_; }
  std::span<const double> shape_params() const noexcept { return shape_params_; }
  double location() const noexcept { return location_; }
  double scale() const noexcept { return scale_; }

  /// Same shape, moved to x -> location + scale * x.
  ContinuousModel located(double location, double scale) const;

  double density(double x) const;
  double cdf(double x) const;
  double quantile(double u) const;
  double quantile(double u, double v) const;
  /// q(u) = Q'(u) = 1 / f(Q(u)).
  double quantile_density(double u) const;
  /// f(Q(u)) of the located-scaled member.
  double density_quantile(double u) const;
  /// Integral of f^2 for the located-scaled member (kappa_standard / scale).
  double kappa() const noexcept { return kappa_ / scale_; }
  double kappa_standard() const noexcept { return kappa_; }

  bool has_analytic_pdq() const noexcept { return fns_->analytic_pdq; }
  /// f*(u) = fQ(u) / kappa. Location-scale free.
  double pdq(double u) const;
  double pdq(double u, double v) const;
  /// f* at distance s from the boundary on the given side.
  double pdq_near(double s, Side side) const;

  const ModelFunctions& functions() const noexcept { return *fns_; }

 private:
  std::string name_;
  std::vector<double> shape_params_;
  std::shared_ptr<const ModelFunctions> fns_;
  double kappa_ = 0.0;
  double location_ = 0.0;
  double scale_ = 1.0;
};

/// Builds a catalog family member. Names: power, uniform, laplace, logistic,
/// extreme_value, cauchy, tukey, normal, lognormal, pareto1, exponential,
/// weibull, gamma, student_t, chisq, normal_mixture, beta.
/// Throws Error(UnknownFamily), Error(InvalidParameter) or
/// Error(NonSquareIntegrable).
ContinuousModel make_model(std::string_view name, std::span<const double> shape_params = {});
ContinuousModel make_model(std::string_view name, std::initializer_list<double> shape_params);

std::span<const std::string_view> catalog_families() noexcept;
/// Number of shape parameters the family takes.
std::size_t family_arity(std::string_view name);

/// A model given only by density, cdf and quantile; f* and kappa are numeric.
ContinuousModel model_from_functions(std::string name, std::function<double(double)> density,
                                     std::function<double(double)> cdf,
                                     std::function<double(double)> quantile);

/// Cell-averaged f* on an m-cell grid (m >= 100), using the closed form when
/// the family has one.
GridDensity pdq(const ContinuousModel& model, std::size_t m = kDefaultGridSize);

/// Same grid built only from density(quantile(u)) of the located-scaled member
/// and a quadrature kappa, bypassing closed forms.
GridDensity pdq_numeric(const ContinuousModel& model, std::size_t m = kDefaultGridSize);
double numeric_kappa(const ContinuousModel& model);

/// kappa_lambda = integral over (0,1) of 1 / (u^(lambda-1) + (1-u)^(lambda-1)).
double tukey_kappa(double lambda);
/// Piecewise approximation: 3^lambda/6 below 1, lambda/2 on [1,2],
/// (pi/2)^(lambda-2) on [2,6].
double tukey_kappa_approx(double lambda);

/// Probabilities on consecutive integers origin, origin+1, ...
class LatticeDistribution {
 public:
  /// Probabilities must sum to 1 within 1e-10.
  static LatticeDistribution from_probs(long origin, std::vector<double> probs);
  /// Non-negative weights rescaled to probabilities.
  static LatticeDistribution from_weights(long origin, std::vector<double> weights);

  /// Infinite supports are truncated where the tail mass drops below 1e-12,
  /// then renormalized.
  static LatticeDistribution poisson(double mean);
  /// P(k) = p (1-p)^k, k >= 0.
  static LatticeDistribution geometric(double p);
  /// Failures before the r-th success: C(k+r-1, k) p^r (1-p)^k.
  static LatticeDistribution negative_binomial(double r, double p);
  static LatticeDistribution binomial(int trials, double p);

  long origin() const noexcept { return origin_; }
  std::span<const double> probs() const noexcept { return probs_; }
  std::span<const double> cumulative() const noexcept { return cum_; }
  /// Sum of p_i^2.
  double kappa() const noexcept;
  double pmf(long k) const noexcept;

 private:
  LatticeDistribution(long origin, std::vector<double> probs);

  long origin_ = 0;
  std::vector<double> probs_;
  std::vector<double> cum_;
};

/// Step density p_i / kappa on (S_{i-1}, S_i], cell-averaged onto m cells.
GridDensity lattice_pdq(const LatticeDistribution& dist, std::size_t m = kDefaultGridSize);

/// Cell averages of the step function equal to heights[i] on
/// (breaks[i], breaks[i+1]]; breaks run from 0 to 1.
std::vector<double> step_function_cells(std::span<const double> breaks,
                                        std::span<const double> heights, std::size_t m);

}  // namespace pdq
