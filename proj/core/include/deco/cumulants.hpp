// cumulants.hpp — Moment/cumulant conversion and exact decoherence functions
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "deco/bath.hpp"
#include "deco/decoherence_trace.hpp"
#include "deco/time_grid.hpp"

namespace deco::cumulants {

// Ordered μ^(1) .. μ^(n) / κ^(1) .. κ^(n); index 0 holds order 1.
using MomentSequence = std::vector<std::complex<double>>;
using CumulantSeries = std::vector<std::complex<double>>;

// κ^(n) = μ^(n) - Σ_{m=1}^{n-1} C(n-1, m-1) κ^(m) μ^(n-m). The same recursion
// applies to classical and quantum (contour-ordered) moments.
CumulantSeries moments_to_cumulants(const MomentSequence& moments);
std::vector<double> moments_to_cumulants(const std::vector<double>& moments);

// Time-resolved second cumulant κ^(2)(t_i). Values are stored complex so that
// estimators built from complex correlation input can flag a non-negligible
// imaginary part instead of silently dropping it.
class SecondCumulant {
public:
    SecondCumulant(TimeGrid grid, std::vector<std::complex<double>> values);

    const TimeGrid& grid() const noexcept { return grid_; }
    const std::vector<std::complex<double>>& values() const noexcept { return values_; }
    double max_abs() const noexcept;
    bool is_real(double rel_tol = 1e-8) const noexcept;
    // Real parts; throws if any |Im κ| exceeds rel_tol * max|κ|.
    std::vector<double> real_values(double rel_tol = 1e-8) const;

private:
    TimeGrid grid_;
    std::vector<std::complex<double>> values_;
};

// Spin-boson second cumulant for a symmetric two-level coupling (B_0 = -B_1):
//   κ(t) = (8/π) ∫_0^∞ dω J(ω) coth(βω/2) (1 - cos ωt)/ω².
// Discrete densities reduce to the exact mode sum
//   κ(t) = 8 Σ_k |g_k|² coth(βω_k/2) (1 - cos ω_k t)/ω_k².
SecondCumulant quantum_second_cumulant_spin_boson(const bath::BathParameters& bp,
                                                  const TimeGrid& grid);

// κ(t) = scale² · 2 ∫_0^t ds ∫_0^s ds' C(s - s'), accumulated with cumulative
// trapezoids in O(N); scale = 2 for the two-level spin-boson convention where
// the level-splitting noise is twice the process.
SecondCumulant classical_second_cumulant(const bath::CorrelationFunction& corr, double scale);

// Frequency-domain form: κ(t) = 8 ∫ dω/2π (1 - cos ωt)/ω² C(ω), evaluated over
// [-omega_max, omega_max] for an arbitrary power spectrum C(ω). C(ω) must be
// finite at ω = 0.
SecondCumulant classical_second_cumulant_from_spectrum(
    const std::function<double(double)>& spectrum, double omega_max, const TimeGrid& grid);

// Second cumulant of a Lorentz-Drude bath in the high-temperature limit,
// i.e. with power spectrum 4 λ k_B T ω_c/(ω² + ω_c²).
SecondCumulant lorentz_drude_high_t_second_cumulant(double lambda, double k_b_t, double omega_c,
                                                    const TimeGrid& grid);

// Φ(t) = exp(-κ(t)/2) for a real Gaussian second cumulant (vanishing first
// cumulant assumed). Complex κ with |Im| above tolerance is rejected: a
// non-real cumulant signals environment-induced energy shifts this map does
// not model.
DecoherenceTrace decoherence_from_second_cumulant(const SecondCumulant& kappa,
                                                  double imag_rel_tol = 1e-8);

// Per-point derivative of K(t) = ln Φ(t): the real part drives amplitude
// decay, the imaginary part environment-induced phase. Central differences in
// the interior, one-sided at the ends; the phase is unwrapped along the trace.
struct GeneratorRates {
    TimeGrid grid;
    std::vector<double> decay_rate;
    std::vector<double> phase_rate;
};

GeneratorRates decoherence_generator(const DecoherenceTrace& trace);

} // namespace deco::cumulants
