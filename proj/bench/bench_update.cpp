#include <benchmark/benchmark.h>

#include "pmloc/analysis.hpp"

using namespace pmloc;

namespace {

struct Fixture {
  Scenario scenario = example_scenario();
  WeightGrid prior = uniform_prior(scenario.grid, scenario.map);
  std::vector<BeamMeasurement> beams = realize_beams(scenario);
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_UpdateReference(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(reference::update(f.prior, f.beams, f.scenario.map));
}

void BM_UpdateSerial(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(update(f.prior, f.beams, f.scenario.map, Execution::serial));
  }
}

void BM_UpdateParallel(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(update(f.prior, f.beams, f.scenario.map, Execution::parallel));
  }
}

void BM_MonteCarlo(benchmark::State& state) {
  Scenario s = example_scenario();
  s.noise_free = false;
  const auto exec = state.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_covariance(s, {1, 2, 3}, 20, exec));
}

}  // namespace

BENCHMARK(BM_UpdateReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UpdateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UpdateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
