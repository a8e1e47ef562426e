#include <benchmark/benchmark.h>

#include <vector>

#include "stablegap/ou_analytics.hpp"
#include "stablegap/sde_engine.hpp"
#include "stablegap/stable_sampling.hpp"
#include "stablegap/wasserstein.hpp"

using namespace stablegap;

namespace {

void BM_PositiveStable(benchmark::State& state) {
  RngStream rng(1, 0);
  const double beta = static_cast<double>(state.range(0)) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_positive_stable(beta, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PositiveStable)->Arg(600)->Arg(950)->Arg(995);

void BM_StableIncrement(benchmark::State& state) {
  const StableModel model(static_cast<int>(state.range(0)), 1.9);
  RngStream rng(2, 0);
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    sample_stable_increment(model, 1e-3, rng, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StableIncrement)->Arg(1)->Arg(10);

void BM_EulerPath(benchmark::State& state) {
  const StableModel model(1, 1.9);
  const auto drift = DriftSpec::ornstein_uhlenbeck(1);
  RngStream rng(3, 0);
  const std::vector<double> x0{1.0};
  const std::vector<std::size_t> rec{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_recorded(model, NoiseKind::stable, drift, x0, 1.0, rec[0], rec, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EulerPath)->Arg(1000);

EmpiricalMeasure cloud(std::size_t n, std::size_t d, std::uint64_t stream) {
  RngStream rng(4, stream);
  return ou::ou_stationary_sample(ou::OuStationaryLaw::stable(static_cast<int>(d), 1.8), n, rng);
}

void BM_Assignment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = cloud(n, 2, 0), y = cloud(n, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(w1_assignment(x, y, {4096, {0, 0}}).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assignment)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed);

void BM_Sorted1d(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = cloud(n, 1, 2).coordinate(0), y = cloud(n, 1, 3).coordinate(0);
  for (auto _ : state) benchmark::DoNotOptimize(w1_sorted_1d(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Sorted1d)->RangeMultiplier(4)->Range(1024, 1 << 18)->Complexity(benchmark::oNLogN);

void BM_Sliced(benchmark::State& state) {
  const auto x = cloud(4096, 10, 4), y = cloud(4096, 10, 5);
  RngStream rng(6, 0);
  for (auto _ : state) benchmark::DoNotOptimize(w1_sliced(x, y, 64, rng, {0, 0}).value);
}
BENCHMARK(BM_Sliced);

}  // namespace

BENCHMARK_MAIN();
