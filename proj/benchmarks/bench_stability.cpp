#include <benchmark/benchmark.h>

#include "ekcore/vn_stability.hpp"

namespace {

using namespace ek;

void BM_StabilityScan(benchmark::State& state) {
    const LinearizedSetup s{1.0, 0.5, 1.0, 1.0};
    const SpatialScheme sp{SpatialKind::rusanov};
    const TemporalScheme fe{TemporalKind::forward_euler};
    const int n_xi = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const StabilityVerdict v = stability_scan(s, sp, fe, 1e-2, 1e-5, n_xi);
        benchmark::DoNotOptimize(v.max_amplification);
    }
    state.SetItemsProcessed(state.iterations() * n_xi);
}
BENCHMARK(BM_StabilityScan)->Arg(257)->Arg(2049);

void BM_CriticalDtBisection(benchmark::State& state) {
    const LinearizedSetup s{1.0, 0.5, 1.0, 1.0};
    for (auto _ : state) {
        const CriticalDt c = critical_dt_bisection(
            s, SpatialScheme{SpatialKind::lax_friedrichs},
            TemporalScheme{TemporalKind::forward_euler}, 1e-2, 1e-3, 257);
        benchmark::DoNotOptimize(c.dt);
    }
}
BENCHMARK(BM_CriticalDtBisection);

}  // namespace
