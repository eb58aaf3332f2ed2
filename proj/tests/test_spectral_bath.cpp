#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "deco/bath.hpp"
#include "deco/quadrature.hpp"
#include "deco/rng.hpp"
#include "deco/spectral_density.hpp"

using namespace deco;
using bath::BathParameters;
using bath::SpectralDensity;

namespace {
constexpr double kPi = 3.14159265358979323846;

const double kInf = std::numeric_limits<double>::infinity();
} // namespace

TEST_CASE("Lorentz-Drude evaluation and odd extension") {
    const auto sd = SpectralDensity::lorentz_drude(0.5, 1.0);
    CHECK(sd.evaluate(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sd.evaluate(0.0) == 0.0);
    CHECK(sd.evaluate(-1.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(bath::evaluate_spectral_density(sd, 2.0) ==
          doctest::Approx(2.0 * 0.5 * 1.0 * 2.0 / 5.0).epsilon(1e-15));
}

TEST_CASE("spectral density validation") {
    CHECK_THROWS_AS(SpectralDensity::lorentz_drude(-0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::lorentz_drude(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::discrete({}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::discrete({{1.0, 0.3}, {1.0, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::discrete({{-1.0, 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::tabulated({1.0, 0.5}, {0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::tabulated({0.5, 1.0}, {0.1, -0.2}), std::invalid_argument);
}

TEST_CASE("tabulated density interpolates linearly and rejects out-of-range") {
    const auto sd = SpectralDensity::tabulated({1.0, 2.0, 3.0}, {0.2, 0.6, 0.3});
    CHECK(sd.evaluate(1.5) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(sd.evaluate(0.5) == doctest::Approx(0.1).epsilon(1e-15)); // (0,0) anchor
    CHECK(sd.evaluate(-1.5) == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK_THROWS_AS(sd.evaluate(3.5), std::out_of_range);
}

TEST_CASE("tabulated density loads from CSV") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "decosim_test_spectral.csv";
    {
        std::ofstream out(path);
        out << "omega,J\n0.5,0.25\n1.0,0.5\n2.0,0.4\n";
    }
    const auto sd = SpectralDensity::tabulated_from_csv(path.string());
    CHECK(sd.evaluate(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    fs::remove(path);

    {
        std::ofstream out(path);
        out << "w,J\n0.5,0.25\n";
    }
    CHECK_THROWS_AS(SpectralDensity::tabulated_from_csv(path.string()), std::runtime_error);
    fs::remove(path);
}

TEST_CASE("discrete bath at zero temperature gives a pure phase") {
    const auto bp = BathParameters::thermal(SpectralDensity::discrete({{1.0, 1.0}}), kInf);
    const TimeGrid grid(0.25, 17);
    const auto corr = bath::bath_correlation(bp, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i);
        CHECK(corr.values()[i].real() == doctest::Approx(std::cos(t)).epsilon(1e-14));
        CHECK(corr.values()[i].imag() == doctest::Approx(-std::sin(t)).epsilon(1e-14));
    }
}

TEST_CASE("discrete correlation is an exact trigonometric sum") {
    const std::vector<bath::DiscreteMode> modes = {{0.7, 0.3}, {1.9, 0.45}, {3.2, 0.2}};
    const auto bp = BathParameters::thermal(SpectralDensity::discrete(modes), 1.4);
    const double t = 2.31;
    const auto d = bath::bath_correlation_at(bp, t);

    std::complex<double> expected{0.0, 0.0};
    for (const auto& m : modes) {
        const double n = 1.0 / std::expm1(1.4 * m.omega);
        const double g2 = m.coupling * m.coupling;
        expected += g2 * ((1.0 + n) * std::exp(std::complex<double>(0.0, -m.omega * t)) +
                          n * std::exp(std::complex<double>(0.0, m.omega * t)));
    }
    CHECK(std::abs(d - expected) < 1e-13 * std::abs(expected));
}

TEST_CASE("D(-t) equals conj(D(t)) for random baths") {
    rng::Stream rand(7, 0);
    for (int trial = 0; trial < 12; ++trial) {
        const double lambda = 0.1 + rand.uniform_unit();
        const double omega_c = 0.3 + 2.0 * rand.uniform_unit();
        const double beta = 0.2 + 3.0 * rand.uniform_unit();
        const auto bp = trial % 2 == 0
                            ? BathParameters::thermal(
                                  SpectralDensity::lorentz_drude(lambda, omega_c), beta)
                            : BathParameters::thermal(
                                  SpectralDensity::discrete(
                                      {{0.5 + rand.uniform_unit(), 0.2 + 0.3 * rand.uniform_unit()},
                                       {1.5 + rand.uniform_unit(), 0.1 + 0.3 * rand.uniform_unit()}}),
                                  beta);
        const double d0 = std::abs(bath::bath_correlation_at(bp, 0.0));
        for (const double t : {0.3, 1.1, 2.7}) {
            const auto forward = bath::bath_correlation_at(bp, t);
            const auto backward = bath::bath_correlation_at(bp, -t);
            CHECK(std::abs(backward - std::conj(forward)) < 1e-12 * d0);
        }
    }
}

TEST_CASE("D(0) agrees between adaptive quadrature and dense trapezoid") {
    const auto bp =
        BathParameters::thermal(SpectralDensity::lorentz_drude(0.5, 1.0), 1.0);
    const double adaptive = bath::bath_correlation_at(bp, 0.0).real();

    // Independent route: dense trapezoid of J(ω) coth(βω/2) / π over the same
    // truncated interval.
    const double omega_max = bath::quadrature_cutoff(bp);
    const std::size_t n = 1 << 22;
    const double h = omega_max / static_cast<double>(n);
    double sum = 0.5 * bath::spectral_coth_product(bp, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        sum += bath::spectral_coth_product(bp, h * static_cast<double>(i));
    sum += 0.5 * bath::spectral_coth_product(bp, omega_max);
    const double trapezoid = sum * h / kPi;

    CHECK(adaptive == doctest::Approx(trapezoid).epsilon(1e-8));
    CHECK(adaptive > 0.0);
}

TEST_CASE("symmetrized part equals the real part and is bounded by S(0)") {
    const auto bp =
        BathParameters::thermal(SpectralDensity::lorentz_drude(0.5, 1.0), 1.0);
    const auto corr = bath::bath_correlation(bp, TimeGrid(0.1, 101));
    for (std::size_t i = 0; i < corr.grid().size(); ++i) {
        CHECK(corr.symmetrized()[i] == corr.values()[i].real());
        CHECK(corr.symmetrized()[i] <= corr.symmetrized()[0] + 1e-12);
    }

    const auto discrete = BathParameters::thermal(
        SpectralDensity::discrete({{0.9, 0.4}, {2.3, 0.3}}), 0.7);
    const auto dcorr = bath::bath_correlation(discrete, TimeGrid(0.05, 201));
    for (std::size_t i = 0; i < dcorr.grid().size(); ++i)
        CHECK(dcorr.symmetrized()[i] <= dcorr.symmetrized()[0] + 1e-12);
}

TEST_CASE("high-temperature power spectrum values") {
    const auto bp = BathParameters::thermal(SpectralDensity::lorentz_drude(0.5, 1.0), 1.0);
    CHECK(bath::high_temperature_power_spectrum(bp, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(bath::high_temperature_power_spectrum(bp, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bath::high_temperature_power_spectrum(bp, 1e6) < 1e-11);

    const auto discrete = BathParameters::thermal(SpectralDensity::discrete({{1.0, 1.0}}), 1.0);
    CHECK_THROWS_AS(bath::high_temperature_power_spectrum(discrete, 0.0), std::invalid_argument);
}

TEST_CASE("high-temperature spectrum and exponential correlation are a Fourier pair") {
    const double lambda = 0.5, omega_c = 1.3, k_b_t = 0.8;
    const auto bp =
        BathParameters::thermal(SpectralDensity::lorentz_drude(lambda, omega_c), 1.0 / k_b_t);

    const double cutoff = 400.0 * omega_c;
    const auto spectrum = [&](double w) { return bath::high_temperature_power_spectrum(bp, w); };

    for (const double t : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        quad::Options opts;
        opts.rel_tol = 1e-12;
        opts.abs_tol = 1e-14;
        opts.initial_panels =
            std::max<std::size_t>(32, static_cast<std::size_t>(cutoff * t / kPi));
        opts.max_panels = 200000;
        const auto body =
            quad::integrate([&](double w) { return spectrum(w) * std::cos(w * t); }, 0.0, cutoff,
                            opts);

        // Asymptotic tail of the truncated cosine transform: exact arctan
        // remainder at t = 0, two integration-by-parts terms otherwise.
        const double amp = 4.0 * lambda * k_b_t * omega_c;
        double tail;
        if (t == 0.0) {
            tail = amp * (kPi / 2.0 - std::atan(cutoff / omega_c)) / omega_c;
        } else {
            const double h = 1.0 / (cutoff * cutoff + omega_c * omega_c);
            const double hp = -2.0 * cutoff * h * h;
            tail = amp * (-std::sin(cutoff * t) * h / t - std::cos(cutoff * t) * hp / (t * t));
        }

        const double transform = (body.value + tail) / kPi;
        const double expected = 2.0 * lambda * k_b_t * std::exp(-omega_c * t);
        CHECK(transform == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("tabulated Lorentz-Drude samples reproduce the parametric correlation") {
    const double lambda = 0.4, omega_c = 0.9, beta = 1.2;
    const auto parametric =
        BathParameters::thermal(SpectralDensity::lorentz_drude(lambda, omega_c), beta);
    const double omega_max = bath::quadrature_cutoff(parametric);

    const std::size_t n = 20000;
    std::vector<double> omega(n), value(n);
    for (std::size_t i = 0; i < n; ++i) {
        omega[i] = omega_max * static_cast<double>(i + 1) / static_cast<double>(n);
        value[i] = 2.0 * lambda * omega_c * omega[i] / (omega[i] * omega[i] + omega_c * omega_c);
    }
    const auto tabulated =
        BathParameters::thermal(SpectralDensity::tabulated(std::move(omega), std::move(value)),
                                beta);

    for (const double t : {0.0, 0.7, 2.2}) {
        const auto a = bath::bath_correlation_at(parametric, t);
        const auto b = bath::bath_correlation_at(tabulated, t);
        CHECK(std::abs(a - b) < 1e-5 * std::abs(a));
    }
}

TEST_CASE("correlation function construction validates D(0)") {
    const TimeGrid grid(0.1, 3);
    CHECK_THROWS_AS(bath::CorrelationFunction(
                        grid, {{0.0, 1.0}, {0.5, 0.0}, {0.2, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(bath::CorrelationFunction(
                        grid, {{-1.0, 0.0}, {0.5, 0.0}, {0.2, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("coth helper is stable at both ends") {
    CHECK(bath::coth_stable(41.0) == 1.0);
    CHECK(bath::coth_stable(1e-6) == doctest::Approx(1e6).epsilon(1e-10));
    // Series branch agrees with 1/tanh at the switchover point.
    const double series = bath::coth_stable(1e-4);
    CHECK(std::abs(series - 1.0 / std::tanh(1e-4)) < 1e-8);
    CHECK_THROWS_AS(bath::coth_stable(0.0), std::domain_error);
}

TEST_CASE("bath parameter validation") {
    const auto sd = SpectralDensity::lorentz_drude(0.5, 1.0);
    CHECK_THROWS_AS(BathParameters::thermal(sd, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BathParameters::thermal(sd, -1.0), std::invalid_argument);

    const auto hot = BathParameters::infinite_temp(sd);
    CHECK(hot.infinite_temperature);
    CHECK_THROWS_AS(hot.k_b_t(), std::domain_error);
    CHECK_THROWS_AS(bath::bath_correlation_at(hot, 0.5), std::domain_error);
}
