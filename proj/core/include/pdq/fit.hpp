#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdq/dists.hpp"
#include "pdq/estimate.hpp"
#include "pdq/random.hpp"

namespace pdq {

enum class FitMethod { Hpdq, Ppcc, Mle };

std::string_view to_string(FitMethod m) noexcept;
FitMethod parse_fit_method(std::string_view name);

/// Coarse grid lo, lo + step, ..., hi, then a fine grid of fine_step spacing
/// over one coarse step either side of the coarse optimum.
struct ShapeGrid {
  double lo;
  double hi;
  double step;
  double fine_step;
};

/// Search grid used when the caller gives none.
ShapeGrid default_shape_grid(std::string_view family);

struct FitOptions {
  /// Bandwidth rule of the empirical pdQ; default_rule(sample) when empty.
  std::optional<BandwidthRule> rule;
  /// Grid of both the empirical and the model pdQs.
  std::size_t m = kEmpiricalGridSize;
  bool keep_trace = true;
};

struct FitResult {
  std::string family;
  FitMethod method;
  double shape;
  double location;
  double scale;
  /// Hellinger distance between the empirical pdQ and the fitted model pdQ.
  double distance_h;
  /// The statistic optimized: H for hpdq, the correlation for ppcc, the
  /// log-likelihood for mle.
  double objective;
  /// (shape, objective) for every grid point evaluated.
  std::vector<std::pair<double, double>> objective_trace;
  /// Grid shapes for which the family is not defined or not square integrable.
  std::vector<double> skipped_shapes;
};

/// Plotting positions (i - 0.5) / n.
std::vector<double> plotting_positions(std::size_t n);

/// Minimizes H(empirical pdQ, model pdQ) over the shape grid. Throws
/// Error(EmptyFeasibleGrid) if no grid shape gives a valid model.
FitResult hpdq_fit(const EmpiricalSample& sample, std::string_view family, const ShapeGrid& grid,
                   const FitOptions& options = {});

/// Same search against a precomputed empirical pdQ (no location/scale step).
FitResult hpdq_fit(const GridDensity& empirical, std::string_view family, const ShapeGrid& grid,
                   bool keep_trace = true);

/// Maximizes the correlation of the sorted data with model quantiles at the
/// plotting positions.
FitResult ppcc_fit(const EmpiricalSample& sample, std::string_view family, const ShapeGrid& grid,
                   const FitOptions& options = {});

/// Two-parameter maximum likelihood with location 0. Throw
/// Error(NonPositiveData) and Error(NonConvergence).
FitResult mle_fit_weibull(const EmpiricalSample& sample, const FitOptions& options = {});
FitResult mle_fit_gamma(const EmpiricalSample& sample, const FitOptions& options = {});

/// Dispatches on method; mle supports weibull and gamma only.
FitResult fit(const EmpiricalSample& sample, std::string_view family, FitMethod method,
              const ShapeGrid& grid, const FitOptions& options = {});

/// Least squares of X_(i) on Q(u_i): returns (intercept, slope) as
/// (location, scale). Throws Error(DegenerateRegressor) for constant
/// quantiles or a non-positive slope.
std::pair<double, double> locscale_regression(const EmpiricalSample& sample,
                                              const ContinuousModel& model);

// ---- Monte Carlo comparison ------------------------------------------------

struct SimulationConfig {
  SampleSource source;
  std::string family;
  std::vector<FitMethod> methods;
  std::size_t n = 500;
  std::size_t replications = 25;
  std::uint64_t seed = 1;
  /// Shape the estimates are scored against.
  double true_shape = 0.0;
  ShapeGrid grid;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct MethodSummary {
  FitMethod method;
  /// sqrt(sd^2 + (mean - true_shape)^2).
  double se;
  double mean;
  double sd;
  double min;
  double max;
  std::size_t fits;
  std::size_t failures;
};

struct SimulationReport {
  std::string source;
  std::string family;
  std::size_t n;
  std::size_t replications;
  double true_shape;
  std::vector<MethodSummary> rows;
};

/// Replication r draws from Rng(seed, r), so results do not depend on the
/// thread count. Fit failures are counted per method, not rethrown.
SimulationReport run_simulation(const SimulationConfig& config);

}  // namespace pdq
