#include <benchmark/benchmark.h>

#include "deco/bath.hpp"
#include "deco/cumulants.hpp"

namespace {

void BM_BathCorrelationPoint(benchmark::State& state) {
    const auto bp = deco::bath::BathParameters::thermal(
        deco::bath::SpectralDensity::lorentz_drude(0.5, 1.0), 1.0);
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(deco::bath::bath_correlation_at(bp, t));
}
BENCHMARK(BM_BathCorrelationPoint)->Arg(1)->Arg(5)->Arg(10);

void BM_QuantumSecondCumulant(benchmark::State& state) {
    const auto bp = deco::bath::BathParameters::thermal(
        deco::bath::SpectralDensity::lorentz_drude(0.5, 1.0), 1.0);
    const deco::TimeGrid grid(0.05, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(deco::cumulants::quantum_second_cumulant_spin_boson(bp, grid));
    }
}
BENCHMARK(BM_QuantumSecondCumulant)->Arg(64)->Arg(256);

void BM_ClassicalSecondCumulant(benchmark::State& state) {
    const deco::TimeGrid grid(0.002, static_cast<std::size_t>(state.range(0)));
    std::vector<std::complex<double>> c(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) c[i] = std::exp(-grid.time(i));
    const deco::bath::CorrelationFunction corr(grid, std::move(c));
    for (auto _ : state)
        benchmark::DoNotOptimize(deco::cumulants::classical_second_cumulant(corr, 2.0));
}
BENCHMARK(BM_ClassicalSecondCumulant)->Arg(1 << 12)->Arg(1 << 14);

} // namespace
