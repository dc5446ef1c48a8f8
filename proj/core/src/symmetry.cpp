#include <algorithm>
#include <cmath>
#include <string>

#include "pdq/divergence.hpp"
#include "pdq/error.hpp"
#include "pdq/numeric.hpp"
#include "pdq/shape.hpp"

namespace pdq {

namespace {

constexpr double kDamping = 0.5;
constexpr int kFixedPointIterations = 100;

bool is_symmetric(const GridDensity& g) {
  const std::size_t m = g.size();
  for (std::size_t j = 0; j < m / 2; ++j) {
    const double a = g[j];
    const double b = g[m - 1 - j];
    if (std::abs(a - b) > 1e-12 * std::max({1.0, a, b})) return false;
  }
  return true;
}

/// Solves beta = c nu exp(gbar / beta) for one cell. In t = ln(beta) the map
/// t - ln(c nu) - gbar exp(-t) is increasing, with its root in
/// [ln(c nu), ln(c nu) + gbar / (c nu)].
double solve_beta(double nu, double gbar, double c, double u) {
  if (nu == 0.0) return 0.0;
  const double cnu = c * nu;
  if (gbar == 0.0) return cnu;
  // Damped fixed point from beta0 = max(nu, gbar) c.
  double beta = std::max(nu, gbar) * c;
  for (int it = 0; it < kFixedPointIterations; ++it) {
    const double next = (1.0 - kDamping) * beta + kDamping * cnu * std::exp(gbar / beta);
    if (!std::isfinite(next)) break;
    if (std::abs(next - beta) <= 1e-14 * next) return next;
    beta = next;
  }
  const double lo = std::log(cnu);
  const double hi = lo + gbar / cnu;
  auto phi = [&](double t) { return t - lo - gbar * std::exp(-t); };
  try {
    const double t = numeric::find_root(phi, lo, hi, 1e-15 * std::max(1.0, std::abs(hi)));
    return std::exp(t);
  } catch (const Error&) {
    throw Error(ErrorCode::FixedPointDivergence,
                "no solution for beta at u = " + std::to_string(u) + " with C = " + std::to_string(c));
  }
}

}  // namespace

std::string_view to_string(SymmetryCriterion c) noexcept {
  switch (c) {
    case SymmetryCriterion::Hellinger: return "hellinger";
    case SymmetryCriterion::KlSymToF: return "kl_a";
    case SymmetryCriterion::KlFToSym: return "kl_b";
    case SymmetryCriterion::SymKl: return "sym_kl";
  }
  return "unknown";
}

SymmetryCriterion parse_symmetry_criterion(std::string_view name) {
  if (name == "hellinger") return SymmetryCriterion::Hellinger;
  if (name == "kl_a" || name == "kl_sym_to_f") return SymmetryCriterion::KlSymToF;
  if (name == "kl_b" || name == "kl_f_to_sym") return SymmetryCriterion::KlFToSym;
  if (name == "sym_kl" || name == "j") return SymmetryCriterion::SymKl;
  throw Error(ErrorCode::InvalidParameter, "unknown symmetry criterion '" + std::string(name) + "'");
}

SymmetricProjection closest_symmetric_hellinger(const GridDensity& g) {
  const GridDensity r = g.reflected();
  const std::size_t m = g.size();
  std::vector<double> alpha_sq(m);
  double b = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double a = 0.5 * (std::sqrt(g[j]) + std::sqrt(r[j]));
    alpha_sq[j] = a * a;
    b += std::sqrt(g[j] * r[j]);
  }
  b /= static_cast<double>(m);
  // 2 (1 - H^2)^2 = 1 + B.
  const double h = std::sqrt(std::max(0.0, 1.0 - std::sqrt(0.5 * (1.0 + b))));
  return {SymmetryCriterion::Hellinger, GridDensity::normalized(std::move(alpha_sq)), h, std::nullopt};
}

SymmetricProjection closest_symmetric_kl_a(const GridDensity& g) {
  const GridDensity r = g.reflected();
  std::vector<double> nu(g.size());
  double d = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    nu[j] = std::sqrt(g[j] * r[j]);
    d += nu[j];
  }
  if (!(d > 0.0)) {
    throw Error(ErrorCode::DegenerateProjection, "density and its reflection have disjoint supports");
  }
  GridDensity density = GridDensity::normalized(std::move(nu));
  const double value = kl(density, g);
  return {SymmetryCriterion::KlSymToF, std::move(density), value, std::nullopt};
}

SymmetricProjection closest_symmetric_kl_b(const GridDensity& g) {
  const GridDensity r = g.reflected();
  std::vector<double> avg(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) avg[j] = 0.5 * (g[j] + r[j]);
  GridDensity density = GridDensity::normalized(std::move(avg));
  const double value = kl(g, density);
  return {SymmetryCriterion::KlFToSym, std::move(density), value, std::nullopt};
}

std::vector<double> default_c_grid() {
  constexpr std::size_t n = 200;
  std::vector<double> c(n);
  const double lo = std::log(0.05);
  const double hi = std::log(5.0);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return c;
}

GridDensity sym_kl_candidate(const GridDensity& g, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidParameter, "C must be positive");
  }
  const GridDensity r = g.reflected();
  const std::size_t m = g.size();
  std::vector<double> beta(m);
  for (std::size_t j = 0; j < m; ++j) {
    // beta is symmetric; solve the lower half and mirror.
    if (j > m - 1 - j) {
      beta[j] = beta[m - 1 - j];
      continue;
    }
    const double nu = std::sqrt(g[j] * r[j]);
    const double gbar = 0.5 * (g[j] + r[j]);
    beta[j] = solve_beta(nu, gbar, c, g.midpoint(j));
  }
  double d = 0.0;
  for (double b : beta) d += b;
  if (!(d > 0.0)) {
    throw Error(ErrorCode::DegenerateProjection, "density and its reflection have disjoint supports");
  }
  return GridDensity::normalized(std::move(beta));
}

SymmetricProjection closest_symmetric_sym_kl(const GridDensity& g, std::span<const double> c_grid) {
  if (is_symmetric(g)) return {SymmetryCriterion::SymKl, g, 0.0, std::nullopt};
  std::vector<double> grid = c_grid.empty() ? default_c_grid()
                                            : std::vector<double>(c_grid.begin(), c_grid.end());
  std::sort(grid.begin(), grid.end());
  if (grid.size() < 3 || !(grid.front() > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "C grid needs at least three positive values");
  }
  auto objective = [&](double c) { return sym_kl(g, sym_kl_candidate(g, c)); };
  std::size_t best = 0;
  double best_value = kInfiniteDivergence;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = objective(grid[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == 0 || best + 1 == grid.size()) {
    throw Error(ErrorCode::NoInteriorMinimum,
                "J is smallest at the end of the C grid (C = " + std::to_string(grid[best]) + ")");
  }
  // Refine in ln C between the neighbouring grid points.
  const auto refined = numeric::minimize([&](double t) { return objective(std::exp(t)); },
                                         std::log(grid[best - 1]), std::log(grid[best + 1]), 30);
  double c_opt = grid[best];
  if (refined.value < best_value) {
    c_opt = std::exp(refined.x);
    best_value = refined.value;
  }
  return {SymmetryCriterion::SymKl, sym_kl_candidate(g, c_opt), best_value, c_opt};
}

SymmetricProjection closest_symmetric(const GridDensity& g, SymmetryCriterion criterion) {
  switch (criterion) {
    case SymmetryCriterion::Hellinger: return closest_symmetric_hellinger(g);
    case SymmetryCriterion::KlSymToF: return closest_symmetric_kl_a(g);
    case SymmetryCriterion::KlFToSym: return closest_symmetric_kl_b(g);
    case SymmetryCriterion::SymKl: return closest_symmetric_sym_kl(g);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown symmetry criterion");
}

}  // namespace pdq
