#include "deco/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "deco/quadrature.hpp"

namespace deco::cumulants {
namespace {

constexpr double kPi = 3.14159265358979323846;

// (1 - cos(w t)) / w², with the removable singularity at w = 0 expanded.
double one_minus_cos_over_w2(double w, double t) {
    const double x = w * t;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return t * t * (0.5 - x2 / 24.0 + x2 * x2 / 720.0);
    }
    return (1.0 - std::cos(x)) / (w * w);
}

std::vector<double> binomial_row(std::size_t n) {
    // Row of C(n, m) for m = 0..n.
    std::vector<double> row(n + 1, 1.0);
    for (std::size_t m = 1; m <= n; ++m)
        row[m] = row[m - 1] * static_cast<double>(n - m + 1) / static_cast<double>(m);
    return row;
}

quad::Options kernel_quadrature_options(double omega_max, double t) {
    quad::Options opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-14;
    const double half_periods = omega_max * std::abs(t) / kPi;
    opts.initial_panels =
        static_cast<std::size_t>(std::clamp(half_periods, 16.0, 8192.0));
    opts.max_panels = 60000;
    return opts;
}

} // namespace

CumulantSeries moments_to_cumulants(const MomentSequence& moments) {
    if (moments.empty())
        throw std::invalid_argument("moments_to_cumulants: need at least one moment");
    const std::size_t n_orders = moments.size();
    CumulantSeries kappa(n_orders);
    for (std::size_t n = 1; n <= n_orders; ++n) {
        const auto binom = binomial_row(n - 1);
        std::complex<double> value = moments[n - 1];
        for (std::size_t m = 1; m < n; ++m)
            value -= binom[m - 1] * kappa[m - 1] * moments[n - m - 1];
        kappa[n - 1] = value;
    }
    return kappa;
}

std::vector<double> moments_to_cumulants(const std::vector<double>& moments) {
    MomentSequence complex_moments(moments.begin(), moments.end());
    const auto kappa = moments_to_cumulants(complex_moments);
    std::vector<double> out(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i) out[i] = kappa[i].real();
    return out;
}

SecondCumulant::SecondCumulant(TimeGrid grid, std::vector<std::complex<double>> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("SecondCumulant: value count does not match grid");
}

double SecondCumulant::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool SecondCumulant::is_real(double rel_tol) const noexcept {
    const double scale = max_abs();
    if (scale == 0.0) return true;
    for (const auto& v : values_)
        if (std::abs(v.imag()) > rel_tol * scale) return false;
    return true;
}

std::vector<double> SecondCumulant::real_values(double rel_tol) const {
    if (!is_real(rel_tol))
        throw std::domain_error("SecondCumulant: imaginary part above tolerance; "
                                "energy-shift handling is not supported here");
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].real();
    return out;
}

SecondCumulant quantum_second_cumulant_spin_boson(const bath::BathParameters& bp,
                                                  const TimeGrid& grid) {
    if (bp.infinite_temperature)
        throw std::domain_error("quantum_second_cumulant_spin_boson: divergent at infinite "
                                "temperature");

    std::vector<std::complex<double>> kappa(grid.size());

    if (bp.spectral.kind() == bath::SpectralDensity::Kind::discrete) {
        const auto& modes = bp.spectral.discrete_params().modes;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double t = grid.time(i);
            double value = 0.0;
            for (const auto& m : modes) {
                const double coth = std::isinf(bp.beta)
                                        ? 1.0
                                        : bath::coth_stable(0.5 * bp.beta * m.omega);
                value += 8.0 * m.coupling * m.coupling * coth *
                         one_minus_cos_over_w2(m.omega, t);
            }
            kappa[i] = value;
        }
        return SecondCumulant(grid, std::move(kappa));
    }

    const double omega_max = bath::quadrature_cutoff(bp);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i);
        if (t == 0.0) {
            kappa[i] = 0.0;
            continue;
        }
        const auto integrand = [&](double w) {
            return bath::spectral_coth_product(bp, w) * one_minus_cos_over_w2(w, t);
        };
        const auto result = quad::integrate(integrand, 0.0, omega_max,
                                            kernel_quadrature_options(omega_max, t));
        kappa[i] = 8.0 / kPi * result.value;
    }
    return SecondCumulant(grid, std::move(kappa));
}

SecondCumulant classical_second_cumulant(const bath::CorrelationFunction& corr, double scale) {
    const TimeGrid& grid = corr.grid();
    const double dt = grid.dt();
    const auto& c = corr.values();

    // Nested cumulative trapezoids: inner = ∫_0^s C(u) du, outer = ∫_0^t inner.
    std::vector<std::complex<double>> kappa(grid.size());
    std::complex<double> inner{0.0, 0.0};
    std::complex<double> inner_prev{0.0, 0.0};
    std::complex<double> outer{0.0, 0.0};
    kappa[0] = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        inner_prev = inner;
        inner += 0.5 * dt * (c[i - 1] + c[i]);
        outer += 0.5 * dt * (inner_prev + inner);
        kappa[i] = 2.0 * scale * scale * outer;
    }
    return SecondCumulant(grid, std::move(kappa));
}

SecondCumulant classical_second_cumulant_from_spectrum(
    const std::function<double(double)>& spectrum, double omega_max, const TimeGrid& grid) {
    if (!(omega_max > 0.0))
        throw std::invalid_argument("classical_second_cumulant_from_spectrum: omega_max must be "
                                    "positive");
    std::vector<std::complex<double>> kappa(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i);
        if (t == 0.0) {
            kappa[i] = 0.0;
            continue;
        }
        const auto integrand = [&](double w) {
            return spectrum(w) * one_minus_cos_over_w2(w, t);
        };
        auto opts = kernel_quadrature_options(omega_max, t);
        opts.initial_panels *= 2;
        const auto result = quad::integrate(integrand, -omega_max, omega_max, opts);
        kappa[i] = 8.0 / (2.0 * kPi) * result.value;
    }
    return SecondCumulant(grid, std::move(kappa));
}

SecondCumulant lorentz_drude_high_t_second_cumulant(double lambda, double k_b_t, double omega_c,
                                                    const TimeGrid& grid) {
    const auto bp = bath::BathParameters::thermal(
        bath::SpectralDensity::lorentz_drude(lambda, omega_c), 1.0 / k_b_t);
    const double omega_max = bath::quadrature_cutoff(bp);
    const auto spectrum = [&](double w) { return bath::high_temperature_power_spectrum(bp, w); };
    return classical_second_cumulant_from_spectrum(spectrum, omega_max, grid);
}

DecoherenceTrace decoherence_from_second_cumulant(const SecondCumulant& kappa,
                                                  double imag_rel_tol) {
    const auto real_kappa = kappa.real_values(imag_rel_tol);
    std::vector<std::complex<double>> phi(real_kappa.size());
    for (std::size_t i = 0; i < real_kappa.size(); ++i)
        phi[i] = std::exp(-0.5 * real_kappa[i]);
    return DecoherenceTrace(kappa.grid(), std::move(phi), Provenance::exact_cumulant);
}

GeneratorRates decoherence_generator(const DecoherenceTrace& trace) {
    const auto& phi = trace.values();
    const std::size_t n = phi.size();
    if (n < 2) throw std::invalid_argument("decoherence_generator: need at least two points");

    // K(t) = ln Φ(t) with the phase unwrapped along the trace.
    std::vector<std::complex<double>> log_phi(n);
    double phase = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double magnitude = std::abs(phi[i]);
        if (magnitude == 0.0)
            throw std::domain_error("decoherence_generator: Phi crosses zero at index " +
                                    std::to_string(i));
        if (i > 0) phase += std::arg(phi[i] / phi[i - 1]);
        log_phi[i] = {std::log(magnitude), phase};
    }

    const double dt = trace.grid().dt();
    GeneratorRates rates{trace.grid(), std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> dk;
        if (i == 0)
            dk = (log_phi[1] - log_phi[0]) / dt;
        else if (i == n - 1)
            dk = (log_phi[n - 1] - log_phi[n - 2]) / dt;
        else
            dk = (log_phi[i + 1] - log_phi[i - 1]) / (2.0 * dt);
        rates.decay_rate[i] = dk.real();
        rates.phase_rate[i] = dk.imag();
    }
    return rates;
}

} // namespace deco::cumulants
