// spectral_density.hpp — Bath spectral densities J(ω)
#pragma once

#include <string>
#include <variant>
#include <vector>

namespace deco::bath {

// Ohmic density with algebraic (Drude) cutoff: J(ω) = 2λ ω_c ω / (ω² + ω_c²).
struct LorentzDrudeDensity {
    double lambda;  // coupling strength (energy)
    double omega_c; // cutoff frequency (rad/time)
};

struct DiscreteMode {
    double omega;    // mode frequency, > 0
    double coupling; // g_k (energy)
};

// Delta comb J(ω) = π Σ_k |g_k|² δ(ω - ω_k). Pointwise evaluation returns the
// almost-everywhere value 0; quantities built from discrete baths always use
// the exact per-mode sums instead of this density.
struct DiscreteDensity {
    std::vector<DiscreteMode> modes;
};

// Sampled J on an ascending positive frequency grid, interpolated linearly in
// ω. Below the first sample the curve is anchored at (0, 0), consistent with
// the antisymmetric extension; above the last sample evaluation is an error.
struct TabulatedDensity {
    std::vector<double> omega;
    std::vector<double> value;
};

class SpectralDensity {
public:
    enum class Kind { lorentz_drude, discrete, tabulated };

    static SpectralDensity lorentz_drude(double lambda, double omega_c);
    static SpectralDensity discrete(std::vector<DiscreteMode> modes);
    static SpectralDensity tabulated(std::vector<double> omega, std::vector<double> value);
    // Two-column CSV with header line `omega,J`.
    static SpectralDensity tabulated_from_csv(const std::string& path);

    Kind kind() const noexcept;

    // J(ω) with the odd extension J(-ω) = -J(ω) and J(0) = 0.
    double evaluate(double omega) const;
    // J(ω)/ω; even in ω and finite at ω = 0, where the odd extension makes
    // J(ω) vanish linearly.
    double evaluate_over_omega(double omega) const;

    const LorentzDrudeDensity& lorentz_drude_params() const;
    const DiscreteDensity& discrete_params() const;
    const TabulatedDensity& tabulated_params() const;

private:
    explicit SpectralDensity(std::variant<LorentzDrudeDensity, DiscreteDensity, TabulatedDensity> v)
        : v_(std::move(v)) {}

    std::variant<LorentzDrudeDensity, DiscreteDensity, TabulatedDensity> v_;
};

// Free-function form of SpectralDensity::evaluate.
double evaluate_spectral_density(const SpectralDensity& sd, double omega);

} // namespace deco::bath
