#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/negative_binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pdq/dists.hpp"
#include "pdq/error.hpp"

namespace pdq {

namespace {

constexpr double kTailMass = 1e-12;
constexpr double kProbTolerance = 1e-10;

template <class Dist>
std::vector<double> truncated_pmf(const Dist& d) {
  const double upper = boost::math::quantile(boost::math::complement(d, kTailMass));
  const auto kmax = static_cast<long>(std::ceil(upper));
  std::vector<double> p(static_cast<std::size_t>(kmax) + 1);
  for (long k = 0; k <= kmax; ++k) p[static_cast<std::size_t>(k)] = boost::math::pdf(d, static_cast<double>(k));
  return p;
}

void require_probability(double p, const char* what) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, std::string(what) + ": p must be in (0, 1]");
  }
}

}  // namespace

LatticeDistribution::LatticeDistribution(long origin, std::vector<double> probs)
    : origin_(origin), probs_(std::move(probs)), cum_(probs_.size()) {
  std::partial_sum(probs_.begin(), probs_.end(), cum_.begin());
  if (!cum_.empty()) cum_.back() = 1.0;
}

LatticeDistribution LatticeDistribution::from_probs(long origin, std::vector<double> probs) {
  if (probs.empty()) throw Error(ErrorCode::InvalidParameter, "lattice: no probabilities");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::InvalidParameter, "lattice: probabilities must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw Error(ErrorCode::InvalidParameter,
                "lattice: probabilities sum to " + std::to_string(total));
  }
  return LatticeDistribution(origin, std::move(probs));
}

LatticeDistribution LatticeDistribution::from_weights(long origin, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidParameter, "lattice: weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidParameter, "lattice: weights sum to zero");
  for (double& w : weights) w /= total;
  return LatticeDistribution(origin, std::move(weights));
}

LatticeDistribution LatticeDistribution::poisson(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw Error(ErrorCode::InvalidParameter, "poisson: mean must be positive");
  }
  return from_weights(0, truncated_pmf(boost::math::poisson_distribution<double>(mean)));
}

LatticeDistribution LatticeDistribution::geometric(double p) {
  return negative_binomial(1.0, p);
}

LatticeDistribution LatticeDistribution::negative_binomial(double r, double p) {
  require_probability(p, "negative_binomial");
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidParameter, "negative_binomial: r must be positive");
  }
  if (p == 1.0) return from_probs(0, {1.0});
  return from_weights(0, truncated_pmf(boost::math::negative_binomial_distribution<double>(r, p)));
}

LatticeDistribution LatticeDistribution::binomial(int trials, double p) {
  if (trials < 1) throw Error(ErrorCode::InvalidParameter, "binomial: trials must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParameter, "binomial: p must be in [0, 1]");
  const boost::math::binomial_distribution<double> d(trials, p);
  std::vector<double> probs(static_cast<std::size_t>(trials) + 1);
  for (int k = 0; k <= trials; ++k) probs[static_cast<std::size_t>(k)] = boost::math::pdf(d, k);
  return from_weights(0, std::move(probs));
}

double LatticeDistribution::kappa() const noexcept {
  return std::inner_product(probs_.begin(), probs_.end(), probs_.begin(), 0.0);
}

double LatticeDistribution::pmf(long k) const noexcept {
  if (k < origin_) return 0.0;
  const auto i = static_cast<std::size_t>(k - origin_);
  return i < probs_.size() ? probs_[i] : 0.0;
}

std::vector<double> step_function_cells(std::span<const double> breaks,
                                        std::span<const double> heights, std::size_t m) {
  if (breaks.size() != heights.size() + 1 || m == 0) {
    throw Error(ErrorCode::InvalidParameter, "step function: need one more break than heights");
  }
  const double md = static_cast<double>(m);
  std::vector<double> cells(m, 0.0);
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const double a = std::clamp(breaks[i], 0.0, 1.0);
    const double b = std::clamp(breaks[i + 1], 0.0, 1.0);
    if (!(b > a) || heights[i] == 0.0) continue;
    auto j = static_cast<std::size_t>(a * md);
    for (; j < m; ++j) {
      const double lo = std::max(a, static_cast<double>(j) / md);
      const double hi = std::min(b, static_cast<double>(j + 1) / md);
      if (hi <= lo) {
        if (static_cast<double>(j) / md >= b) break;
        continue;
      }
      cells[j] += heights[i] * (hi - lo) * md;
    }
  }
  return cells;
}

GridDensity lattice_pdq(const LatticeDistribution& dist, std::size_t m) {
  const auto probs = dist.probs();
  const auto cum = dist.cumulative();
  const double kappa = dist.kappa();
  std::vector<double> breaks(probs.size() + 1, 0.0);
  std::copy(cum.begin(), cum.end(), breaks.begin() + 1);
  std::vector<double> heights(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) heights[i] = probs[i] / kappa;
  return GridDensity::from_values(step_function_cells(breaks, heights, m));
}

}  // namespace pdq
