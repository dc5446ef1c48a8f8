#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "pdq/dists.hpp"

namespace pdq {

/// Reproducible stream: Mersenne Twister seeded from (seed, stream), so each
/// replication of a simulation owns an independent generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// A distribution that can be sampled: a catalog model (by inversion), a
/// two-component contamination mixture, or a lattice distribution.
class SampleSource {
 public:
  static SampleSource model(ContinuousModel model);
  /// With probability weight draw from `contaminant`, otherwise from `base`.
  static SampleSource contaminated(ContinuousModel base, double weight, ContinuousModel contaminant);
  static SampleSource lattice(LatticeDistribution dist);

  std::vector<double> draw(Rng& rng, std::size_t n) const;
  double draw_one(Rng& rng) const;

  /// e.g. "tukey(-1)" or "0.95*weibull(2)+0.05*(2*lognormal)".
  const std::string& description() const noexcept { return description_; }

 private:
  struct Mixture {
    ContinuousModel base;
    double weight;
    ContinuousModel contaminant;
  };
  using Kind = std::variant<ContinuousModel, Mixture, LatticeDistribution>;

  SampleSource(Kind kind, std::string description)
      : kind_(std::move(kind)), description_(std::move(description)) {}

  Kind kind_;
  std::string description_;
};

/// "name(p1,p2)" with the location-scale suffix when not standard.
std::string describe(const ContinuousModel& model);

}  // namespace pdq
