#include "common.hpp"

#include "fluidact/dynamics.hpp"
#include "fluidact/transient.hpp"

#include <benchmark/benchmark.h>

using namespace fluidact;

// Ring-up at half the natural frequency, 40 steps per period.
static void BM_RingUp(benchmark::State& state) {
    const auto p = bench::plate("air");
    const auto mat = reference::polysilicon();
    const auto k = modal_stiffness(p.geometry, mat);
    const double f0 = natural_frequency(k, p.geometry, mat, p.fluid);
    TransientConfig tc;
    tc.duration = static_cast<double>(state.range(0)) / f0;
    tc.time_step = 1.0 / (40.0 * f0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(DriveSignal::ac(0.5, 0.5 * f0), p, mat, k, tc));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 40);
}
BENCHMARK(BM_RingUp)->Arg(100)->Arg(600);

static void BM_Envelope(benchmark::State& state) {
    const auto p = bench::plate("air");
    const auto mat = reference::polysilicon();
    const auto k = modal_stiffness(p.geometry, mat);
    const double f0 = natural_frequency(k, p.geometry, mat, p.fluid);
    TransientConfig tc;
    tc.duration = 600.0 / f0;
    tc.time_step = 1.0 / (40.0 * f0);
    const auto r = simulate(DriveSignal::ac(0.5, 0.5 * f0), p, mat, k, tc);
    for (auto _ : state) benchmark::DoNotOptimize(envelope(r));
}
BENCHMARK(BM_Envelope);
