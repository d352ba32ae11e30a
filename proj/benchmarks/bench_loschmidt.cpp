#include <benchmark/benchmark.h>

#include "dqpt/loschmidt.hpp"

using namespace dqpt;

namespace {
const QuenchSpec kQuench{{0.8, 1.5, 0.0, 0.0}, {0.8, 0.0, 0.2, 0.0}};
}

static void BM_ModeAmplitude(benchmark::State& state) {
  const QuenchModeTable table(kQuench, MomentumGrid::midpoint(64), 1);
  const auto& ov = table.overlaps()[17];
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mode_amplitude(ov, t));
    t += 0.001;
  }
}
BENCHMARK(BM_ModeAmplitude);

static void BM_ModeTableBuild(benchmark::State& state) {
  const auto grid = MomentumGrid::midpoint(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(QuenchModeTable(kQuench, grid, 1));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ModeTableBuild)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

static void BM_RateFunctionPoint(benchmark::State& state) {
  const auto grid = MomentumGrid::midpoint(state.range(0));
  std::vector<double> times = {3.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rate_function(kQuench, grid, times, 1));
  }
}
BENCHMARK(BM_RateFunctionPoint)->Arg(512)->Arg(2048);

static void BM_FindCriticalTimes(benchmark::State& state) {
  const auto grid = MomentumGrid::midpoint(256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_critical_times(kQuench, grid, 10.0, 1e-6));
  }
}
BENCHMARK(BM_FindCriticalTimes)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
