#include "common.hpp"

#include "fluidact/dynamics.hpp"
#include "fluidact/response.hpp"

#include <benchmark/benchmark.h>

using namespace fluidact;

static void BM_ResonanceInFluid(benchmark::State& state) {
    const auto geom = reference::cantilever();
    const auto mat = reference::polysilicon();
    const auto water = fluid_preset("tap-water");
    for (auto _ : state) benchmark::DoNotOptimize(resonance_in_fluid(geom, mat, water));
}
BENCHMARK(BM_ResonanceInFluid);

static void BM_HarmonicSweep(benchmark::State& state) {
    const auto geom = reference::cantilever();
    const auto mat = reference::polysilicon();
    const auto k = modal_stiffness(geom, mat);
    const auto grid = linear_frequency_grid(1e3, 60e3, static_cast<std::size_t>(state.range(0)));
    ResponseOptions opts;
    opts.workers = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            harmonic_response(grid, 1e-9, geom, mat, fluid_preset("air"), k, opts));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HarmonicSweep)->Args({1181, 1})->Args({1181, 4})->Args({10000, 4})->UseRealTime();
