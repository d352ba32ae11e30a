#include <benchmark/benchmark.h>

#include <array>

#include "dqpt/realspace.hpp"

using namespace dqpt;

static void BM_GroundCovariance(benchmark::State& state) {
  const auto h = build_bdg_realspace({0.8, 1.5, 0.0, 0.0}, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ground_covariance(h));
  }
}
BENCHMARK(BM_GroundCovariance)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_EvolveFull(benchmark::State& state) {
  const int n = state.range(0);
  const auto init = ground_covariance(build_bdg_realspace({0.8, 1.5, 0.0, 0.0}, n));
  const CovarianceEvolver ev(build_bdg_realspace({0.8, 0.0, 0.2, 0.0}, n));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.at(init, t));
    t += 0.01;
  }
}
BENCHMARK(BM_EvolveFull)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_EvolveWindow(benchmark::State& state) {
  const int n = state.range(0);
  const auto init = ground_covariance(build_bdg_realspace({0.8, 1.5, 0.0, 0.0}, n));
  const CovarianceEvolver ev(build_bdg_realspace({0.8, 0.0, 0.2, 0.0}, n));
  const std::array<int, 6> rows = {0, 1, 2, 3, 4, 5};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.window(init, rows, t));
    t += 0.01;
  }
}
BENCHMARK(BM_EvolveWindow)->Arg(96)->Arg(192);

static void BM_PairRdmFromWindow(benchmark::State& state) {
  const auto init = ground_covariance(build_bdg_realspace({0.8, 0.4, 0.2, 1.0}, 32));
  const Eigen::MatrixXd g4 = init.majorana_cov.block<4, 4>(2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_rdm_from_window(g4));
  }
}
BENCHMARK(BM_PairRdmFromWindow);

BENCHMARK_MAIN();
