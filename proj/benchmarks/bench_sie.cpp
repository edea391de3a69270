#include <benchmark/benchmark.h>

#include "pcm/sie.hpp"

namespace {

pcm::SIEProblem problem(std::size_t n_t, std::size_t paths) {
    return pcm::SIEProblem::uniform(n_t, pcm::constant_kernel(1.0), pcm::random_normal_forcing(1.0, 0.1, 5),
                                    pcm::linear_nonlinearity(0.4), paths, 5);
}

// Separable cumulative-sum path against the dense double loop.
void BM_SieApplySeparable(benchmark::State& state) {
    const auto p = problem(static_cast<std::size_t>(state.range(0)), 1);
    const auto x = pcm::sie_forcing(p);
    for (auto _ : state) benchmark::DoNotOptimize(pcm::sie_apply(p, x));
}
BENCHMARK(BM_SieApplySeparable)->Arg(250)->Arg(1000)->Arg(4000);

void BM_SieApplyDense(benchmark::State& state) {
    auto p = problem(static_cast<std::size_t>(state.range(0)), 1);
    p.kernel = p.kernel.dense();
    const auto x = pcm::sie_forcing(p);
    for (auto _ : state) benchmark::DoNotOptimize(pcm::sie_apply(p, x));
}
BENCHMARK(BM_SieApplyDense)->Arg(250)->Arg(1000);

void BM_SieSolvePaths(benchmark::State& state) {
    const auto p = problem(1000, 1000);
    const pcm::Parallelism par{static_cast<unsigned>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(pcm::sie_solve(p, 1e-10, 200, par));
}
BENCHMARK(BM_SieSolvePaths)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
