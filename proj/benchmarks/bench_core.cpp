#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "dftstat/dftstat.hpp"

using namespace dftstat;

namespace {

std::vector<double> series(std::size_t n) {
    GeneratorConfig gen;
    gen.length = n;
    gen.seed = 1;
    return generate(model_preset("model1"), gen);
}

void BM_DftCanonical(benchmark::State& state) {
    const auto x = series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dft_canonical(x));
    state.SetComplexityN(state.range(0));
}
// Powers of two take the radix-2 path, the rest go through Bluestein.
BENCHMARK(BM_DftCanonical)->Arg(453)->Arg(512)->Arg(2047)->Arg(2048)->Arg(1 << 14);

void BM_TestStatistic(benchmark::State& state) {
    const auto x = series(static_cast<std::size_t>(state.range(0)));
    const auto lags = consecutive_lags(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(test_statistic(x, lags));
}
BENCHMARK(BM_TestStatistic)->Args({512, 4})->Args({512, 20})->Args({4096, 4});

void BM_SegmentDepth3(benchmark::State& state) {
    const auto x = series(2048);
    const auto lags = consecutive_lags(4);
    for (auto _ : state) benchmark::DoNotOptimize(segment_test(x, 3, lags));
}
BENCHMARK(BM_SegmentDepth3);

void BM_ChisqSf(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chisq_sf(x, 20));
        x = x < 60.0 ? x + 0.37 : 0.5;
    }
}
BENCHMARK(BM_ChisqSf);

void BM_MonteCarlo(benchmark::State& state) {
    McConfig c;
    c.model = model_preset("model6");
    c.length = 512;
    c.lags = consecutive_lags(10);
    c.replications = 200;
    c.threads = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rejection_rate(c));
    state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_NoncentralityB(benchmark::State& state) {
    const auto f = local_spectrum(model_preset("model4"));
    for (auto _ : state) benchmark::DoNotOptimize(noncentrality_B(f, 1));
}
BENCHMARK(BM_NoncentralityB)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
