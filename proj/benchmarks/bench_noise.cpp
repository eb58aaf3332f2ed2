#include <benchmark/benchmark.h>

#include "deco/noise.hpp"

namespace {

void BM_OuStream(benchmark::State& state) {
    const auto spec = deco::noise::NoiseProcessSpec::ou(1.0, 1.0);
    deco::noise::NoiseStream stream(spec, 1, 0, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(stream.next_real());
}
BENCHMARK(BM_OuStream);

void BM_SumOfExponentialsStream(benchmark::State& state) {
    const auto spec = deco::noise::NoiseProcessSpec::sum_of_exponentials(
        {{1.0, 0.5}, {0.5, 2.0}, {0.25, 8.0}});
    deco::noise::NoiseStream stream(spec, 1, 0, 0.01);
    for (auto _ : state) benchmark::DoNotOptimize(stream.next_real());
}
BENCHMARK(BM_SumOfExponentialsStream);

void BM_ComplexWhiteStream(benchmark::State& state) {
    const auto spec = deco::noise::NoiseProcessSpec::complex_white(0.2);
    deco::noise::NoiseStream stream(spec, 1, 0, 0.005);
    for (auto _ : state) benchmark::DoNotOptimize(stream.next_complex());
}
BENCHMARK(BM_ComplexWhiteStream);

void BM_EstimateAutocorrelation(benchmark::State& state) {
    const auto spec = deco::noise::NoiseProcessSpec::ou(1.0, 1.0);
    deco::noise::NoiseStream stream(spec, 1, 0, 0.01);
    std::vector<double> samples(1 << 16);
    for (auto& s : samples) s = stream.next_real();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            deco::noise::estimate_autocorrelation(std::span<const double>(samples), 64, 0.01));
    }
}
BENCHMARK(BM_EstimateAutocorrelation);

} // namespace

BENCHMARK_MAIN();
