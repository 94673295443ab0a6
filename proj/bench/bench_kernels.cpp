// Serial against parallel for the two hot loops.

#include <benchmark/benchmark.h>

#include "fracdisp/estimates.hpp"
#include "fracdisp/kernel.hpp"

using namespace fracdisp;

namespace {

const KernelSpec kSpec{1, 0.5, 1.0};

void band_profile(benchmark::State& state, Exec exec) {
    const DyadicBand band{2};
    const auto xs = default_sup_grid(band, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernel_band_profile(kSpec, 1e3, band, xs, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void sweep(benchmark::State& state, Exec exec) {
    SweepOptions opt;
    opt.exec = exec;
    opt.x_points = 128;
    const auto ts = log_uniform_grid(1e2, 1e4, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(decay_sweep(kSpec, ts, {0, 1, 2}, opt));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(ts.size()) * 3);
}

}  // namespace

BENCHMARK_CAPTURE(band_profile, serial, Exec::serial)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(band_profile, parallel, Exec::parallel)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, serial, Exec::serial)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, parallel, Exec::parallel)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
