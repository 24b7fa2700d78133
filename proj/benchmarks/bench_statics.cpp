#include "common.hpp"

#include "fluidact/statics.hpp"

#include <benchmark/benchmark.h>

using namespace fluidact;

static void BM_SolveEquilibria(benchmark::State& state) {
    const auto p = bench::plate("air");
    const SpringModel k(1.448275529174325);
    for (auto _ : state) benchmark::DoNotOptimize(solve_equilibria(p, k, 5.0));
}
BENCHMARK(BM_SolveEquilibria);

static void BM_PullInVoltageNumeric(benchmark::State& state) {
    const auto p = bench::plate("ipa");
    const SpringModel k(1.448275529174325);
    for (auto _ : state) benchmark::DoNotOptimize(pull_in_voltage_numeric(p, k));
}
BENCHMARK(BM_PullInVoltageNumeric);

static void BM_StaticSweep(benchmark::State& state) {
    const auto p = bench::plate("tap-water");
    const SpringModel k(1.448275529174325);
    const auto workers = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(static_sweep(p, k, 0.0, 10.0, 1001, workers));
}
BENCHMARK(BM_StaticSweep)->Arg(1)->Arg(4)->UseRealTime();
