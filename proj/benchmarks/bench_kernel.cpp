#include <benchmark/benchmark.h>

#include "eggdomain/classifier.hpp"
#include "eggdomain/kernel.hpp"
#include "eggdomain/mc.hpp"
#include "eggdomain/series.hpp"

using namespace eggdomain;

static void BM_KernelEval(benchmark::State& state) {
    EggDomainSpec spec(static_cast<int>(state.range(0)), 0.5);
    BergmanKernel kernel(spec);
    Rng rng(7);
    DomainPoint p = sample_interior_point(spec, rng, 0.2);
    DomainPoint q = sample_interior_point(spec, rng, 0.2);
    PointPair pair(p, q);
    for (auto _ : state) benchmark::DoNotOptimize(kernel.eval(pair).value);
}
BENCHMARK(BM_KernelEval)->Arg(1)->Arg(3)->Arg(8);

static void BM_SeriesKernel(benchmark::State& state) {
    EggDomainSpec spec(2, 0.5);
    Rng rng(7);
    DomainPoint p = sample_interior_point(spec, rng, 0.5);
    DomainPoint q = sample_interior_point(spec, rng, 0.5);
    PointPair pair(p, q);
    const int cutoff = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernel_series(spec, pair, cutoff).value);
}
BENCHMARK(BM_SeriesKernel)->Arg(20)->Arg(40)->Arg(80);

static void BM_Classify(benchmark::State& state) {
    EggDomainSpec spec(static_cast<int>(state.range(0)), 0.37);
    for (auto _ : state) benchmark::DoNotOptimize(classify(spec).margin);
}
BENCHMARK(BM_Classify)->Arg(2)->Arg(5)->Arg(8);

static void BM_ThresholdSweep(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(threshold_sweep(3, {0.1, 0.9}, 1e-6).K_star);
}
BENCHMARK(BM_ThresholdSweep);

BENCHMARK_MAIN();
