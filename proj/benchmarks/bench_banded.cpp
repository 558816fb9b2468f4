#include <benchmark/benchmark.h>

#include <random>

#include "ekcore/banded.hpp"

namespace {

using namespace ek;

void BM_CyclicBandedFactorSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int w = 8;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto _ : state) {
        state.PauseTiming();
        CyclicBanded mat(n, w, w);
        mat.zero();
        for (int i = 0; i < n; ++i)
            for (int dj = -w; dj <= w; ++dj) {
                const int j = ((i + dj) % n + n) % n;
                mat.add(i, j, dj == 0 ? 6.0 + d(rng) : d(rng));
            }
        std::vector<double> b(static_cast<std::size_t>(n));
        for (double& v : b) v = d(rng);
        state.ResumeTiming();
        mat.factor();
        mat.solve(b);
        benchmark::DoNotOptimize(b.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_CyclicBandedFactorSolve)->Arg(480)->Arg(1920);

}  // namespace

BENCHMARK_MAIN();
