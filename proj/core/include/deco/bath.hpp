// bath.hpp — Thermal bath parameters and quantum time-correlation functions
#pragma once

#include <complex>
#include <vector>

#include "deco/spectral_density.hpp"
#include "deco/time_grid.hpp"

namespace deco::bath {

struct BathParameters {
    SpectralDensity spectral;
    double beta = 0.0;                 // inverse temperature; +inf means T = 0
    bool infinite_temperature = false; // beta -> 0 limit, flagged explicitly

    // beta > 0 required; beta = +inf selects the zero-temperature bath.
    static BathParameters thermal(SpectralDensity sd, double beta);
    static BathParameters infinite_temp(SpectralDensity sd);

    double k_b_t() const; // 1/beta; throws for the infinite-temperature flag
};

// Complex two-time correlation D(t) on a uniform grid together with its
// symmetrized (real) part S(t) = Re D(t). Optionally carries per-point
// standard errors when produced by a statistical estimator.
class CorrelationFunction {
public:
    CorrelationFunction(TimeGrid grid, std::vector<std::complex<double>> values,
                        std::vector<double> std_errors = {});

    const TimeGrid& grid() const noexcept { return grid_; }
    const std::vector<std::complex<double>>& values() const noexcept { return values_; }
    const std::vector<double>& symmetrized() const noexcept { return symmetrized_; }
    bool has_std_errors() const noexcept { return !std_errors_.empty(); }
    const std::vector<double>& std_errors() const noexcept { return std_errors_; }

private:
    TimeGrid grid_;
    std::vector<std::complex<double>> values_;
    std::vector<double> symmetrized_;
    std::vector<double> std_errors_;
};

// coth(x) for x > 0, stable against overflow and the 1/x pole: returns exactly
// 1 for x > 40 (the difference is below double precision) and switches to the
// Laurent series for small x.
double coth_stable(double x);

// Upper integration cutoff used for continuous spectral densities.
double quadrature_cutoff(const BathParameters& bp);

// J(ω) coth(βω/2), assembled through J(ω)/ω so the ω -> 0 limit stays finite.
// Even in ω; the thermal noise power spectrum of the matching condition.
double spectral_coth_product(const BathParameters& bp, double omega);

// D(t) for a thermal bosonic bath. Discrete densities use the exact mode sum
//   D(t) = Σ_k |g_k|² [(1 + n̄_k) e^{-iω_k t} + n̄_k e^{+iω_k t}],
// continuous ones the frequency integral
//   D(t) = (1/π) ∫_0^∞ dω J(ω) [coth(βω/2) cos ωt - i sin ωt],
// with the ω -> 0 limit of J(ω) coth(βω/2) handled analytically. Quadrature
// that fails to reach tolerance throws quad::ConvergenceError.
std::complex<double> bath_correlation_at(const BathParameters& bp, double t);
CorrelationFunction bath_correlation(const BathParameters& bp, const TimeGrid& grid);

// High-temperature power spectrum of a Lorentz-Drude bath:
//   J(ω) coth(βω/2) -> 4 λ k_B T ω_c / (ω² + ω_c²).
double high_temperature_power_spectrum(const BathParameters& bp, double omega);

} // namespace deco::bath
