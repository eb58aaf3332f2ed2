// dephasing.hpp — Noisy two-level dephasing ensembles and the exact bosonic reference
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "deco/decoherence_trace.hpp"
#include "deco/noise.hpp"
#include "deco/time_grid.hpp"

namespace deco::dephasing {

struct TwoLevelInitialState {
    std::complex<double> c0;
    std::complex<double> c1;

    TwoLevelInitialState(std::complex<double> c0_in, std::complex<double> c1_in);
    static TwoLevelInitialState equal_superposition();
};

struct EnsembleConfig {
    std::size_t n_traj;
    double dt;
    double t_final;
    std::uint64_t master_seed;
    noise::NoiseProcessSpec noise;
    int threads = 1;

    void validate() const;
    TimeGrid grid() const { return TimeGrid::from_duration(t_final, dt); }
};

// Phase φ_j(t_i) = ∫_0^{t_i} 2 η_j(s) ds of one noise realization, accumulated
// by trapezoid over the stream samples. The level-splitting noise is twice the
// process for the symmetric two-level coupling.
std::vector<double> trajectory_phase(const EnsembleConfig& cfg, std::uint64_t trajectory_index);

// Ensemble average Φ(t_i) = (1/n) Σ_j e^{-i φ_j(t_i)} with per-point standard
// errors. Each realization is unitary (|e^{-iφ}| = 1); only the average
// decoheres. Per-block accumulation in ascending trajectory order keeps the
// result bit-identical for every thread count.
DecoherenceTrace run_dephasing_ensemble(const TwoLevelInitialState& init,
                                        const EnsembleConfig& cfg);

// P = 1 + 2 |c0|² |c1|² (L - 1) for a Loschmidt echo L in [0, 1].
double purity_from_loschmidt(const TwoLevelInitialState& init, double loschmidt);

// OU process matched to a high-temperature Lorentz-Drude bath:
// C(0) = 2 λ k_B T, τ = 1/ω_c.
noise::NoiseProcessSpec matched_ou_noise(double lambda, double k_b_t, double omega_c);

struct FockMode {
    double omega;
    double coupling;
    int cutoff;
};

// Truncated harmonic-mode description of a discrete bath used as the exact
// reference. The per-mode cutoff must leave a thermal tail below 1e-8.
class FockBathSpec {
public:
    FockBathSpec(std::vector<FockMode> modes, double beta);

    // Picks the smallest cutoff (at level granularity 4) for which the
    // thermal tail is below 1e-8 and a further increase by 4 changes the
    // decoherence function by less than 1e-8 on a probe of the grid.
    static FockBathSpec with_auto_cutoff(const std::vector<bath::DiscreteMode>& modes, double beta,
                                         const TimeGrid& grid);

    const std::vector<FockMode>& modes() const noexcept { return modes_; }
    double beta() const noexcept { return beta_; }

private:
    std::vector<FockMode> modes_;
    double beta_;
};

// Exact decoherence function of the pure-dephasing two-level system coupled
// to the truncated modes: Φ_01(t) = Π_k Tr[ρ_k e^{+i h_k^{(1)} t} e^{-i h_k^{(0)} t}]
// with h_k^{(α)} = ω_k a†a ± g_k (a + a†). The free-bath interaction-picture
// factors cancel between the two branch propagators, so no residual phase
// correction is needed. The trace factorizes mode by mode.
DecoherenceTrace fock_oracle_qdf(const FockBathSpec& bath, const TimeGrid& grid);

// General matrix element Φ_αβ for α, β in {0, 1}; the diagonal elements stay
// at 1 (populations are untouched by pure dephasing).
std::vector<std::complex<double>> fock_qdf_element(const FockBathSpec& bath, const TimeGrid& grid,
                                                   int alpha, int beta);

// Reference configuration for the high-temperature Lorentz-Drude comparison:
// λ = 0.5 ω_0, β = 1/ω_0, ω_c = ω_0, 2000 trajectories, ω_0 dt = 0.002,
// equal-superposition initial state.
struct Fig2Preset {
    double omega_0 = 1.0;
    double lambda = 0.5;
    double beta = 1.0;
    double omega_c = 1.0;
    double dt = 0.002;
    double t_final = 10.0;
    std::size_t n_traj = 2000;
    std::uint64_t master_seed = 2020;

    noise::NoiseProcessSpec noise() const;
    EnsembleConfig ensemble(int threads = 1) const;
};

Fig2Preset fig2_preset();

} // namespace deco::dephasing
