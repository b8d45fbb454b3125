// Serial reference sweep against the OpenMP sweep at several thread counts.

#include <benchmark/benchmark.h>

#include "zipfcomp/abm.hpp"

namespace {

zipfcomp::SweepConfig bench_config() {
    zipfcomp::SweepConfig cfg;
    cfg.n_countries = 200;
    cfg.n_jobs = 10000;
    cfg.seed = 20120301;
    return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto cfg = bench_config();
    for (auto _ : state) benchmark::DoNotOptimize(zipfcomp::sweep_serial(cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.n_countries * cfg.n_jobs));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SweepOpenMP(benchmark::State& state) {
    const auto cfg = bench_config();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(zipfcomp::sweep(cfg, threads));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.n_countries * cfg.n_jobs));
}
BENCHMARK(BM_SweepOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
