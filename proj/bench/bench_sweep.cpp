// Serial reference sweep against the OpenMP sweep on the same job list.

#include <benchmark/benchmark.h>

#include "arching/sweep.hpp"

namespace {

arching::SweepConfig bench_config() {
  arching::SweepConfig cfg;
  cfg.c_levels = {300, 450};
  cfg.w_levels = {3, 7, 11};
  cfg.replicates = 2;
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(arching::run_sweep_serial(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(arching::plan_sweep(cfg).size()));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SweepParallel(benchmark::State& state) {
  const auto cfg = bench_config();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(arching::run_sweep_parallel(cfg, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(arching::plan_sweep(cfg).size()));
}
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SingleRun(benchmark::State& state) {
  arching::SimConfig cfg;
  cfg.c = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(arching::run(cfg));
}
BENCHMARK(BM_SingleRun)->Arg(200)->Arg(450)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
