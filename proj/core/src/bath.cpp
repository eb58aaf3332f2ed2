#include "deco/bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "deco/quadrature.hpp"

namespace deco::bath {
namespace {

constexpr double kPi = 3.14159265358979323846;

// x * coth(x), even in x and equal to 1 at x = 0.
double x_coth(double x) {
    x = std::abs(x);
    if (x > 40.0) return x;
    if (x < 1e-4) return 1.0 + x * x / 3.0 - x * x * x * x / 45.0;
    return x / std::tanh(x);
}

double bose_occupation(double beta, double omega) {
    if (std::isinf(beta)) return 0.0;
    const double x = beta * omega;
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

quad::Options correlation_quadrature_options(double omega_max, double t) {
    quad::Options opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-13;
    // Seed at least one panel per half period of the cos/sin factors.
    const double half_periods = omega_max * std::abs(t) / kPi;
    opts.initial_panels = static_cast<std::size_t>(
        std::clamp(half_periods, 16.0, 8192.0));
    opts.max_panels = 60000;
    return opts;
}

} // namespace

BathParameters BathParameters::thermal(SpectralDensity sd, double beta) {
    if (!(beta > 0.0))
        throw std::invalid_argument("BathParameters: beta must be positive (use infinite_temp "
                                    "for the beta -> 0 limit)");
    return BathParameters{std::move(sd), beta, false};
}

BathParameters BathParameters::infinite_temp(SpectralDensity sd) {
    return BathParameters{std::move(sd), 0.0, true};
}

double BathParameters::k_b_t() const {
    if (infinite_temperature)
        throw std::domain_error("BathParameters: k_B T is unbounded at infinite temperature");
    return 1.0 / beta;
}

CorrelationFunction::CorrelationFunction(TimeGrid grid, std::vector<std::complex<double>> values,
                                         std::vector<double> std_errors)
    : grid_(grid), values_(std::move(values)), std_errors_(std::move(std_errors)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("CorrelationFunction: value count does not match grid");
    if (!std_errors_.empty() && std_errors_.size() != grid_.size())
        throw std::invalid_argument("CorrelationFunction: std error count does not match grid");
    const double scale = std::abs(values_[0]);
    if (std::abs(values_[0].imag()) > 1e-10 * std::max(scale, 1e-300))
        throw std::invalid_argument("CorrelationFunction: D(0) must be real");
    if (values_[0].real() < -1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("CorrelationFunction: D(0) must be non-negative");
    symmetrized_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) symmetrized_[i] = values_[i].real();
}

double coth_stable(double x) {
    if (!(x > 0.0)) throw std::domain_error("coth_stable: requires x > 0");
    if (x > 40.0) return 1.0;
    if (x < 1e-4) return 1.0 / x + x / 3.0 - x * x * x / 45.0;
    return 1.0 / std::tanh(x);
}

double spectral_coth_product(const BathParameters& bp, double omega) {
    if (bp.infinite_temperature)
        throw std::domain_error("spectral_coth_product: divergent at infinite temperature");
    if (std::isinf(bp.beta)) return bp.spectral.evaluate(std::abs(omega));
    return bp.spectral.evaluate_over_omega(omega) * (2.0 / bp.beta) * x_coth(0.5 * bp.beta * omega);
}

double quadrature_cutoff(const BathParameters& bp) {
    switch (bp.spectral.kind()) {
        case SpectralDensity::Kind::lorentz_drude: {
            const double omega_c = bp.spectral.lorentz_drude_params().omega_c;
            double scale = omega_c;
            if (!bp.infinite_temperature && !std::isinf(bp.beta))
                scale = std::max(scale, 1.0 / bp.beta);
            return 50.0 * scale;
        }
        case SpectralDensity::Kind::tabulated:
            return bp.spectral.tabulated_params().omega.back();
        case SpectralDensity::Kind::discrete:
            throw std::logic_error("quadrature_cutoff: discrete baths use exact mode sums");
    }
    return 0.0;
}

std::complex<double> bath_correlation_at(const BathParameters& bp, double t) {
    if (bp.infinite_temperature)
        throw std::domain_error("bath_correlation: divergent at infinite temperature");

    if (bp.spectral.kind() == SpectralDensity::Kind::discrete) {
        std::complex<double> d{0.0, 0.0};
        for (const auto& m : bp.spectral.discrete_params().modes) {
            const double n = bose_occupation(bp.beta, m.omega);
            const double g2 = m.coupling * m.coupling;
            const double c = std::cos(m.omega * t);
            const double s = std::sin(m.omega * t);
            // (1+n) e^{-iωt} + n e^{+iωt} = (1+2n) cos ωt - i sin ωt
            d += std::complex<double>(g2 * (1.0 + 2.0 * n) * c, -g2 * s);
        }
        return d;
    }

    const double omega_max = quadrature_cutoff(bp);
    const auto opts = correlation_quadrature_options(omega_max, t);
    const auto integrand = [&](double w) {
        return std::complex<double>(spectral_coth_product(bp, w) * std::cos(w * t),
                                    -bp.spectral.evaluate(w) * std::sin(w * t));
    };
    const auto result = quad::integrate_complex(integrand, 0.0, omega_max, opts);
    return result.value / kPi;
}

CorrelationFunction bath_correlation(const BathParameters& bp, const TimeGrid& grid) {
    std::vector<std::complex<double>> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = bath_correlation_at(bp, grid.time(i));
    return CorrelationFunction(grid, std::move(values));
}

double high_temperature_power_spectrum(const BathParameters& bp, double omega) {
    if (bp.spectral.kind() != SpectralDensity::Kind::lorentz_drude)
        throw std::invalid_argument(
            "high_temperature_power_spectrum: only defined for Lorentz-Drude densities");
    const auto& p = bp.spectral.lorentz_drude_params();
    const double k_b_t = bp.k_b_t();
    return 4.0 * p.lambda * k_b_t * p.omega_c / (omega * omega + p.omega_c * p.omega_c);
}

} // namespace deco::bath
