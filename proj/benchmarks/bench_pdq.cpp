#include <benchmark/benchmark.h>

#include "pdq/pdq.hpp"

namespace {

void BM_ModelPdq(benchmark::State& state, const char* family, std::vector<double> shape) {
  const auto model = pdq::make_model(family, shape);
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pdq::pdq(model, m));
}
BENCHMARK_CAPTURE(BM_ModelPdq, normal, "normal", {})->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_ModelPdq, tukey, "tukey", {-1.0})->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_ModelPdq, gamma, "gamma", {3.0})->Arg(100)->Arg(1000);

pdq::EmpiricalSample sample(std::size_t n) {
  pdq::Rng rng(1);
  return pdq::EmpiricalSample(pdq::SampleSource::model(pdq::make_model("weibull", {2.0})).draw(rng, n));
}

void BM_SmoothEstimator(benchmark::State& state) {
  const auto s = sample(static_cast<std::size_t>(state.range(0)));
  const auto rule = pdq::default_rule(s);
  for (auto _ : state) benchmark::DoNotOptimize(pdq::empirical_pdq_smooth(s, rule));
}
BENCHMARK(BM_SmoothEstimator)->Arg(500)->Arg(5000);

void BM_Fit(benchmark::State& state) {
  const auto s = sample(500);
  const auto method = static_cast<pdq::FitMethod>(state.range(0));
  const auto grid = pdq::default_shape_grid("weibull");
  for (auto _ : state) benchmark::DoNotOptimize(pdq::fit(s, "weibull", method, grid));
  state.SetLabel(std::string(pdq::to_string(method)));
}
BENCHMARK(BM_Fit)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_SymKlProjection(benchmark::State& state) {
  const auto g = pdq::pdq(pdq::make_model("lognormal"), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pdq::closest_symmetric_sym_kl(g));
}
BENCHMARK(BM_SymKlProjection)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
