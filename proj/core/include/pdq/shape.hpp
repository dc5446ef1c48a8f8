#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pdq/dists.hpp"
#include "pdq/grid_density.hpp"

namespace pdq {

// ---- moments ---------------------------------------------------------------

struct PdqMoments {
  double mu_star;
  double sigma_star;
  double gamma1_star;
  double gamma2_star;
};

/// Moments of the step density carried by the grid (exact per cell).
PdqMoments pdq_moments(const GridDensity& g);

// ---- closest symmetric densities -------------------------------------------

enum class SymmetryCriterion {
  Hellinger,
  KlSymToF,  // minimizes I(symmetric : f)
  KlFToSym,  // minimizes I(f : symmetric)
  SymKl,     // minimizes J
};

std::string_view to_string(SymmetryCriterion c) noexcept;
/// Accepts "hellinger", "kl_a", "kl_b", "sym_kl" (and the long names).
SymmetryCriterion parse_symmetry_criterion(std::string_view name);

struct SymmetricProjection {
  SymmetryCriterion criterion;
  GridDensity density;
  /// H*, I* or J* between the input and `density`.
  double value;
  /// Minimizing C of the J criterion; empty for the other criteria and for
  /// inputs that are already symmetric.
  std::optional<double> c_opt;
};

/// alpha = (sqrt(g) + sqrt(g_r)) / 2, density alpha^2 / d.
SymmetricProjection closest_symmetric_hellinger(const GridDensity& g);

/// nu = sqrt(g g_r), density nu / d. Throws Error(DegenerateProjection) if d = 0.
SymmetricProjection closest_symmetric_kl_a(const GridDensity& g);

/// density (g + g_r) / 2.
SymmetricProjection closest_symmetric_kl_b(const GridDensity& g);

/// Geometric grid of 200 values from 0.05 to 5.
std::vector<double> default_c_grid();

/// For each C solves beta = C nu exp(gbar / beta) cellwise, normalizes beta to
/// a density f_C and minimizes J(g, f_C) over the grid, then refines C by
/// Brent's method between the neighbours of the best grid point. Throws
/// Error(NoInteriorMinimum) when the best C is an end of the grid and
/// Error(FixedPointDivergence) if a cell equation cannot be solved.
SymmetricProjection closest_symmetric_sym_kl(const GridDensity& g,
                                             std::span<const double> c_grid = {});

/// The f_C density for one value of C (exposed for plotting and tests).
GridDensity sym_kl_candidate(const GridDensity& g, double c);

SymmetricProjection closest_symmetric(const GridDensity& g, SymmetryCriterion criterion);

// ---- tail classification ---------------------------------------------------

enum class LimitKind { Zero, Finite, PlusInfinity, MinusInfinity };

struct DerivativeLimit {
  LimitKind kind;
  /// Limit value for Finite, 0 for Zero, +-inf otherwise.
  double value;
};

enum class TailLabel { Short, Medium, Long, VeryLong };

std::string_view to_string(LimitKind k) noexcept;
std::string_view to_string(TailLabel t) noexcept;

inline constexpr int kMaxTailOrder = 4;

struct TailReport {
  Side side;
  /// Limits of f* and its derivatives (orders 0, 1, ...) at the boundary, in
  /// the u orientation. Stops at n* (or kMaxTailOrder).
  std::vector<DerivativeLimit> derivative_limits;
  /// Empty for short tails. When every computed order vanishes this holds
  /// kMaxTailOrder + 1 and n_star_is_lower_bound is set.
  std::optional<int> n_star;
  bool n_star_is_lower_bound = false;
  TailLabel label;
};

/// Classifies the limit of a sequence whose i-th term is evaluated at
/// s = 10^-(first_decade + i), by its trend. Returns nothing when no pattern
/// is clear.
std::optional<DerivativeLimit> classify_limit(std::span<const double> sequence,
                                              int first_decade = 2);

/// Derivatives of f* at distance s from the boundary by central differences
/// with step s/8, in the u orientation; orders 0..kMaxTailOrder.
std::vector<double> boundary_derivatives(const ContinuousModel& model, Side side, double s);

/// Throws Error(InconclusiveLimit) when a limit needed for n* is unclear.
TailReport classify_tail(const ContinuousModel& model, Side side);

}  // namespace pdq
