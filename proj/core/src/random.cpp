#include "pdq/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdq/error.hpp"

namespace pdq {

namespace {

double draw_model(const ContinuousModel& model, Rng& rng) {
  const double u = rng.uniform();
  return model.quantile(u, 1.0 - u);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::string describe(const ContinuousModel& model) {
  std::ostringstream os;
  os << model.name();
  const auto p = model.shape_params();
  if (!p.empty()) {
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ')';
  }
  if (model.location() != 0.0 || model.scale() != 1.0) {
    os << '[' << model.location() << ',' << model.scale() << ']';
  }
  return os.str();
}

SampleSource SampleSource::model(ContinuousModel model) {
  std::string d = describe(model);
  return SampleSource(std::move(model), std::move(d));
}

SampleSource SampleSource::contaminated(ContinuousModel base, double weight,
                                        ContinuousModel contaminant) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "contamination weight must be in [0, 1]");
  }
  std::ostringstream os;
  os << (1.0 - weight) << '*' << describe(base) << '+' << weight << "*(";
  if (contaminant.scale() != 1.0 && contaminant.location() == 0.0) {
    os << contaminant.scale() << '*' << describe(contaminant.located(0.0, 1.0));
  } else {
    os << describe(contaminant);
  }
  os << ')';
  return SampleSource(Mixture{std::move(base), weight, std::move(contaminant)}, os.str());
}

SampleSource SampleSource::lattice(LatticeDistribution dist) {
  std::ostringstream os;
  os << "lattice[" << dist.origin() << ".." << dist.origin() + static_cast<long>(dist.probs().size()) - 1
     << ']';
  return SampleSource(std::move(dist), os.str());
}

double SampleSource::draw_one(Rng& rng) const {
  if (const auto* m = std::get_if<ContinuousModel>(&kind_)) return draw_model(*m, rng);
  if (const auto* mix = std::get_if<Mixture>(&kind_)) {
    const bool contaminate = rng.uniform() < mix->weight;
    return draw_model(contaminate ? mix->contaminant : mix->base, rng);
  }
  const auto& dist = std::get<LatticeDistribution>(kind_);
  const auto cum = dist.cumulative();
  const double u = rng.uniform();
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  const auto i = std::min<std::ptrdiff_t>(it - cum.begin(), static_cast<std::ptrdiff_t>(cum.size()) - 1);
  return static_cast<double>(dist.origin() + i);
}

std::vector<double> SampleSource::draw(Rng& rng, std::size_t n) const {
  std::vector<double> x(n);
  for (double& v : x) v = draw_one(rng);
  return x;
}

}  // namespace pdq
