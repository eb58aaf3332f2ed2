#include <benchmark/benchmark.h>

#include "deco/dephasing.hpp"
#include "deco/dissipation.hpp"

namespace {

void BM_DephasingEnsemble(benchmark::State& state) {
    const auto init = deco::dephasing::TwoLevelInitialState::equal_superposition();
    deco::dephasing::EnsembleConfig cfg{static_cast<std::size_t>(state.range(0)),
                                        0.002,
                                        2.0,
                                        2020,
                                        deco::dephasing::matched_ou_noise(0.5, 1.0, 1.0),
                                        1};
    for (auto _ : state)
        benchmark::DoNotOptimize(deco::dephasing::run_dephasing_ensemble(init, cfg));
}
BENCHMARK(BM_DephasingEnsemble)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_FockOracleSingleMode(benchmark::State& state) {
    const deco::TimeGrid grid(0.01, 1001);
    const deco::dephasing::FockBathSpec bath({{1.0, 0.4, 40}}, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(deco::dephasing::fock_oracle_qdf(bath, grid));
}
BENCHMARK(BM_FockOracleSingleMode)->Unit(benchmark::kMillisecond);

void BM_LindbladPropagation(benchmark::State& state) {
    const auto rho0 = deco::dissipation::QubitDensityMatrix::from_amplitudes(
        deco::dephasing::TwoLevelInitialState::equal_superposition());
    const deco::dissipation::DissipationRates rates(0.2, 0.1, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            deco::dissipation::propagate_lindblad(rho0, rates, 0.01, 40.0));
    }
}
BENCHMARK(BM_LindbladPropagation)->Unit(benchmark::kMillisecond);

void BM_DissipativeEnsemble(benchmark::State& state) {
    const auto init = deco::dephasing::TwoLevelInitialState::equal_superposition();
    const deco::dissipation::DissipativeEnsembleConfig cfg{
        static_cast<std::size_t>(state.range(0)), 0.005, 5.0, 7, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            deco::dissipation::run_dissipative_noise_ensemble(init, 0.2, 1.0, cfg));
    }
}
BENCHMARK(BM_DissipativeEnsemble)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

} // namespace
