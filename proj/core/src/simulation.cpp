#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "pdq/error.hpp"
#include "pdq/fit.hpp"

namespace pdq {

SimulationReport run_simulation(const SimulationConfig& config) {
  const std::size_t reps = config.replications;
  const std::size_t k = config.methods.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // estimates[r * k + j]: method j in replication r, NaN when the fit failed.
  std::vector<double> estimates(reps * k, nan);

  auto replicate = [&](std::size_t r) {
    Rng rng(config.seed, r);
    std::vector<double> x = config.source.draw(rng, config.n);
    const EmpiricalSample sample(std::move(x));
    const FitOptions options{std::nullopt, kEmpiricalGridSize, false};
    for (std::size_t j = 0; j < k; ++j) {
      try {
        estimates[r * k + j] = fit(sample, config.family, config.methods[j], config.grid, options).shape;
      } catch (const Error&) {
        // Counted as a failure below.
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(reps, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) replicate(r);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SimulationReport report{config.source.description(), config.family, config.n, reps,
                          config.true_shape, {}};
  for (std::size_t j = 0; j < k; ++j) {
    MethodSummary s{config.methods[j], nan, nan, nan, nan, nan, 0, 0};
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t r = 0; r < reps; ++r) {
      const double e = estimates[r * k + j];
      if (std::isnan(e)) {
        ++s.failures;
        continue;
      }
      ++s.fits;
      sum += e;
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    if (s.fits > 0) {
      s.mean = sum / static_cast<double>(s.fits);
      double ss = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        const double e = estimates[r * k + j];
        if (!std::isnan(e)) ss += (e - s.mean) * (e - s.mean);
      }
      s.sd = s.fits > 1 ? std::sqrt(ss / static_cast<double>(s.fits - 1)) : 0.0;
      const double bias = s.mean - config.true_shape;
      s.se = std::sqrt(s.sd * s.sd + bias * bias);
      s.min = lo;
      s.max = hi;
    }
    report.rows.push_back(s);
  }
  return report;
}

}  // namespace pdq
