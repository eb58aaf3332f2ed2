// dissipation.hpp — Dissipative two-level dynamics: Lindblad vs. classical noise
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "deco/dephasing.hpp"
#include "deco/time_grid.hpp"

namespace deco::dissipation {

// Basis convention used throughout: index 0 = |g> (the σ_z = +1 eigenstate),
// index 1 = |e>, H_S = -ω_0 σ_z / 2, σ_- = |g><e|.
class QubitDensityMatrix {
public:
    explicit QubitDensityMatrix(const Eigen::Matrix2cd& rho);
    static QubitDensityMatrix from_amplitudes(const dephasing::TwoLevelInitialState& psi);
    static QubitDensityMatrix maximally_mixed();

    const Eigen::Matrix2cd& matrix() const noexcept { return rho_; }
    double population_ground() const noexcept { return rho_(0, 0).real(); }
    double population_excited() const noexcept { return rho_(1, 1).real(); }
    std::complex<double> coherence_eg() const noexcept { return rho_(1, 0); }
    double purity() const noexcept { return (rho_ * rho_).trace().real(); }
    double min_eigenvalue() const noexcept;

private:
    Eigen::Matrix2cd rho_;
};

struct DissipationRates {
    double gamma_absorption;  // Γ_a >= 0
    double gamma_spontaneous; // Γ_0 >= 0
    double omega_0;           // transition frequency

    DissipationRates(double gamma_a, double gamma_0, double omega_0_in);
    double gamma_emission() const noexcept { return gamma_absorption + gamma_spontaneous; }
    double gamma_decoherence() const noexcept {
        return 0.5 * (gamma_emission() + gamma_absorption);
    }
};

struct DensityMatrixSeries {
    TimeGrid grid;
    std::vector<QubitDensityMatrix> states;
};

// Fixed-step RK4 on dρ/dt = -i[H_S, ρ] + Γ_e D[σ_-]ρ + Γ_a D[σ_+]ρ. The
// populations then follow dρ_gg/dt = Γ_e ρ_ee - Γ_a ρ_gg and the coherence
// decays at Γ_d = (Γ_e + Γ_a)/2. Trace drift above 1e-8 aborts.
DensityMatrixSeries propagate_lindblad(const QubitDensityMatrix& rho0,
                                       const DissipationRates& rates, double dt, double t_final);

// Master equation obtained by averaging the white-noise unitary ensemble:
// symmetric σ_- and σ_+ channels with equal rate γ. Its stationary point is
// the maximally mixed state regardless of γ.
DensityMatrixSeries propagate_noise_master_equation(const QubitDensityMatrix& rho0, double gamma,
                                                    double omega_0, double dt, double t_final);

struct DissipativeEnsembleConfig {
    std::size_t n_traj;
    double dt;
    double t_final;
    std::uint64_t master_seed;
    int threads = 1;
};

struct DissipativeEnsembleSeries {
    TimeGrid grid;
    std::vector<Eigen::Matrix2cd> rho;
    std::vector<double> stderr_population; // ρ_gg (and, by unit norm, ρ_ee)
    std::vector<double> stderr_coherence_re;
    std::vector<double> stderr_coherence_im;
};

// Trajectory ensemble for H(t) = H_S + η(t) σ_- + η*(t) σ_+ with circular
// complex white noise of rate gamma. Each step applies the exact 2x2 unitary
// exp(-i H_i dt), so every realization stays normalized to machine precision;
// the ensemble average reproduces the symmetric master equation to O(dt).
// Reduction is block-deterministic in ascending trajectory order.
DissipativeEnsembleSeries run_dissipative_noise_ensemble(
    const dephasing::TwoLevelInitialState& psi0, double gamma, double omega_0,
    const DissipativeEnsembleConfig& cfg);

struct RateFit {
    double gamma_d;            // log-linear fit of |ρ_eg(t)|
    double stationary_excited; // tail average of ρ_ee(t)
    double residual_rms;       // RMS residual of the log-linear fit
};

// Fits the coherence decay over the window where |ρ_eg| has not yet dropped
// below e^{-2} of its initial value and averages the excited population over
// the final fifth of the series. Throws if the series never decays by e².
RateFit extract_rates(std::span<const std::complex<double>> coherence,
                      std::span<const double> excited_population, const TimeGrid& grid);

} // namespace deco::dissipation
