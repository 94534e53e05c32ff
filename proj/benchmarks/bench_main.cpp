#include <benchmark/benchmark.h>

#include "ugnorm/estimation.hpp"
#include "ugnorm/reduction.hpp"

namespace {

using namespace ugnorm;

const GridSpec kGrid;

ObservationTrace make_trace(int m) {
  PopulationParams params;
  params.vw_sampling = VwSampling::truncate;
  static const RunLog log = run_game(params, GameConfig{}, 42);
  return trace_from_log(log, 1, m, NormMode::oracle_norm);
}

void BM_ValueDemand(benchmark::State& state) {
  double di = -0.15;
  for (auto _ : state) {
    benchmark::DoNotOptimize(value_demand(di, 1000));
    di += 0.01;
    if (di > 1.79) di = -0.15;
  }
}
BENCHMARK(BM_ValueDemand);

void BM_EstimatorBuild(benchmark::State& state) {
  for (auto _ : state) {
    Estimator est(kGrid);
    benchmark::DoNotOptimize(est.value_demand_at(100));
  }
}
BENCHMARK(BM_EstimatorBuild);

void BM_Estimate(benchmark::State& state) {
  const Estimator est(kGrid);
  const ObservationTrace trace = make_trace(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(est.estimate(trace));
  }
  state.SetItemsProcessed(state.iterations() * est.grid().di_count() * est.grid().vw_count());
}
BENCHMARK(BM_Estimate)->Arg(1)->Arg(10)->Arg(20);

void BM_RunGame(benchmark::State& state) {
  PopulationParams params;
  params.vw_sampling = VwSampling::truncate;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_game(params, GameConfig{}, seed++));
  }
}
BENCHMARK(BM_RunGame);

void BM_SearchSpaceSession(benchmark::State& state) {
  PopulationParams params;
  params.vw_sampling = VwSampling::truncate;
  const RunLog log = run_game(params, GameConfig{}, 7);
  const Estimator est(kGrid);
  for (auto _ : state) {
    ElicitationSession session(log, 3, 10, est);
    benchmark::DoNotOptimize(session.run_search_space(20));
  }
}
BENCHMARK(BM_SearchSpaceSession);

}  // namespace

BENCHMARK_MAIN();
