#include <benchmark/benchmark.h>

#include "dqpt/bdg.hpp"

using namespace dqpt;

static void BM_BuildModeMatrix(benchmark::State& state) {
  const CouplingSet g{0.8, 1.5, 0.0, 0.0};
  double phi = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_mode_matrix(g, phi));
    phi = phi < 1.5 ? phi + 1e-6 : 0.3;
  }
}
BENCHMARK(BM_BuildModeMatrix);

static void BM_DiagonalizeMode(benchmark::State& state) {
  const CouplingSet g{0.8, 0.4, 0.2, 1.0};
  double phi = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(diagonalize_mode(g, phi));
    phi = phi < 1.5 ? phi + 1e-6 : 0.3;
  }
}
BENCHMARK(BM_DiagonalizeMode);

static void BM_QuenchOverlap(benchmark::State& state) {
  const auto d0 = diagonalize_mode({0.8, 1.5, 0.0, 0.0}, 0.7);
  const auto d1 = diagonalize_mode({0.8, 0.0, 0.2, 0.0}, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quench_overlap(d0, d1));
  }
}
BENCHMARK(BM_QuenchOverlap);

BENCHMARK_MAIN();
