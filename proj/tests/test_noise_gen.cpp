#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "deco/bath.hpp"
#include "deco/noise.hpp"

using namespace deco;
using noise::NoiseProcessSpec;
using noise::NoiseStream;

namespace {

std::vector<double> real_samples(NoiseStream& stream, std::size_t n) {
    std::vector<double> out(n);
    for (auto& s : out) s = stream.next_real();
    return out;
}

// Standard error of a mean estimated from block means, for correlated series.
double block_stderr(const std::vector<double>& samples, std::size_t n_blocks = 20) {
    const std::size_t block = samples.size() / n_blocks;
    std::vector<double> means(n_blocks, 0.0);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        for (std::size_t i = 0; i < block; ++i) means[b] += samples[b * block + i];
        means[b] /= static_cast<double>(block);
    }
    const double grand = std::accumulate(means.begin(), means.end(), 0.0) / n_blocks;
    double var = 0.0;
    for (const double m : means) var += (m - grand) * (m - grand);
    var /= static_cast<double>(n_blocks - 1);
    return std::sqrt(var / static_cast<double>(n_blocks));
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(NoiseProcessSpec::ou(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseProcessSpec::ou(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseProcessSpec::sum_of_exponentials({}), std::invalid_argument);
    CHECK_THROWS_AS(NoiseProcessSpec::sum_of_exponentials({{-1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(NoiseProcessSpec::complex_white(0.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseStream(NoiseProcessSpec::ou(1.0, 1.0), 1, 0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(noise::make_ou_stream(NoiseProcessSpec::complex_white(1.0), 1, 0, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(noise::make_complex_white_stream(NoiseProcessSpec::ou(1.0, 1.0), 1, 0, 0.1),
                    std::invalid_argument);

    NoiseStream real(NoiseProcessSpec::ou(1.0, 1.0), 1, 0, 0.1);
    CHECK_THROWS_AS(real.next_complex(), std::logic_error);
    NoiseStream white(NoiseProcessSpec::complex_white(1.0), 1, 0, 0.1);
    CHECK_THROWS_AS(white.next_real(), std::logic_error);
}

TEST_CASE("streams are bit-reproducible and trajectory-independent") {
    const auto spec = NoiseProcessSpec::ou(1.0, 1.0);
    auto a = noise::make_ou_stream(spec, 42, 3, 0.01);
    auto b = noise::make_ou_stream(spec, 42, 3, 0.01);
    auto c = noise::make_ou_stream(spec, 42, 4, 0.01);
    bool identical = true;
    bool distinct = false;
    for (int i = 0; i < 1000; ++i) {
        const double va = a.next_real();
        if (va != b.next_real()) identical = false;
        if (va != c.next_real()) distinct = true;
    }
    CHECK(identical);
    CHECK(distinct);
}

TEST_CASE("OU first samples follow the stationary normal distribution") {
    // First samples of independent trajectories are iid N(0, C(0)).
    const auto spec = NoiseProcessSpec::ou(1.0, 1.0);
    const std::size_t n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        NoiseStream stream(spec, 99, j, 0.01);
        const double x = stream.next_real();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("a vanishing step leaves the OU value unchanged") {
    const auto spec = NoiseProcessSpec::ou(2.0, 1.0);
    NoiseStream stream(spec, 5, 0, 1e-12);
    const double first = stream.next_real();
    const double second = stream.next_real();
    CHECK(std::abs(second - first) < 1e-4);
}

TEST_CASE("empirical OU autocorrelation matches the exponential form") {
    const double dt = 0.01, tau = 1.0;
    const auto spec = NoiseProcessSpec::ou(1.0, tau);
    NoiseStream stream(spec, 123, 0, dt);
    const auto samples = real_samples(stream, 4000000);
    const auto acf = noise::estimate_autocorrelation(std::span<const double>(samples), 100, dt);

    // Normalized by the lag-0 estimate, since the target has C(0) = 1; the
    // ratio cancels the strongly correlated overall-scale fluctuation.
    const double c0 = acf.values()[0].real();
    for (const std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{50},
                                std::size_t{100}}) {
        const double target = std::exp(-static_cast<double>(k) * dt / tau);
        CHECK(std::abs(acf.values()[k].real() / c0 - target) < 5e-3);
    }
}

TEST_CASE("autocorrelation estimate stays within three jackknife errors") {
    const double dt = 0.01, tau = 1.0;
    const auto spec = NoiseProcessSpec::ou(1.0, tau);
    NoiseStream stream(spec, 2024, 0, dt);
    const auto samples = real_samples(stream, 200000);
    const auto acf = noise::estimate_autocorrelation(std::span<const double>(samples), 60, dt);

    for (std::size_t k = 0; k <= 60; ++k) {
        const double target = std::exp(-static_cast<double>(k) * dt / tau);
        CHECK(std::abs(acf.values()[k].real() - target) <= 3.0 * acf.std_errors()[k]);
    }
}

TEST_CASE("single-term sum of exponentials reduces exactly to the OU stream") {
    const auto ou_spec = NoiseProcessSpec::ou(1.7, 0.8);
    const auto sum_spec = NoiseProcessSpec::sum_of_exponentials({{1.7, 0.8}});
    auto ou = noise::make_ou_stream(ou_spec, 11, 6, 0.02);
    auto sum = noise::make_sum_of_exponentials_stream(sum_spec, 11, 6, 0.02);
    bool equal = true;
    for (int i = 0; i < 5000; ++i)
        if (ou.next_real() != sum.next_real()) equal = false;
    CHECK(equal);
}

TEST_CASE("two-term process has additive variance") {
    const auto spec = NoiseProcessSpec::sum_of_exponentials({{1.0, 1.0}, {1.0, 5.0}});
    NoiseStream stream(spec, 8, 0, 0.05);
    const auto samples = real_samples(stream, 400000);
    const auto acf = noise::estimate_autocorrelation(std::span<const double>(samples), 2, 0.05);
    CHECK(std::abs(acf.values()[0].real() - 2.0) <= 3.0 * acf.std_errors()[0]);
}

TEST_CASE("constituent unit components are uncorrelated") {
    const auto spec = NoiseProcessSpec::sum_of_exponentials({{1.0, 0.7}, {1.0, 3.0}});
    NoiseStream stream(spec, 31, 0, 0.05);
    const std::size_t n = 200000;
    std::vector<double> cross(n);
    for (std::size_t i = 0; i < n; ++i) {
        stream.next_real();
        const auto components = stream.component_values();
        cross[i] = components[0] * components[1];
    }
    const double mean = std::accumulate(cross.begin(), cross.end(), 0.0) / n;
    CHECK(std::abs(mean) < 4.0 * block_stderr(cross));
}

TEST_CASE("complex white noise has the discrete-delta statistics") {
    const double gamma = 1.0, dt = 0.01;
    const auto spec = NoiseProcessSpec::complex_white(gamma);
    auto stream = noise::make_complex_white_stream(spec, 17, 0, dt);

    const std::size_t n = 1000000;
    std::complex<double> prev{0.0, 0.0};
    double sum_abs2 = 0.0;
    std::complex<double> sum_sq{0.0, 0.0};
    std::complex<double> sum_lag1{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const auto eta = stream.next_complex();
        sum_abs2 += std::norm(eta);
        sum_sq += eta * eta;
        if (i > 0) sum_lag1 += eta * std::conj(prev);
        prev = eta;
    }
    const double target = gamma / dt;
    CHECK(std::abs(sum_abs2 / n - target) < 0.01 * target);
    // <η²> = 0 (circularity) and <η_i η*_{i+1}> = 0 (independence); both are
    // means of zero-mean variables with per-sample scale ~ γ/dt.
    CHECK(std::abs(sum_sq / static_cast<double>(n)) < 5.0 * target / std::sqrt(n));
    CHECK(std::abs(sum_lag1 / static_cast<double>(n)) < 5.0 * target / std::sqrt(n));
}

TEST_CASE("OU windows are stationary") {
    const double tau = 1.0, dt = 0.05;
    const auto spec = NoiseProcessSpec::ou(1.0, tau);
    NoiseStream stream(spec, 55, 0, dt);
    const std::size_t half = 200000; // T = 10^4 τ per window
    const auto samples = real_samples(stream, 2 * half);

    const auto window_var = [&](std::size_t begin) {
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = begin; i < begin + half; ++i) {
            s += samples[i];
            s2 += samples[i] * samples[i];
        }
        const double m = s / half;
        return s2 / half - m * m;
    };
    const double v1 = window_var(0);
    const double v2 = window_var(half);
    // stderr of each window variance for an exponentially correlated series:
    // sqrt(2/N_eff) with N_eff = N dt / (2 τ).
    const double n_eff = half * dt / (2.0 * tau);
    const double stderr_diff = std::sqrt(2.0) * std::sqrt(2.0 / n_eff);
    CHECK(std::abs(v1 - v2) < 4.0 * stderr_diff);
}

TEST_CASE("zero mean across the Gaussian variants") {
    for (const auto& spec :
         {NoiseProcessSpec::ou(1.0, 1.0),
          NoiseProcessSpec::sum_of_exponentials({{0.5, 0.5}, {1.5, 2.0}})}) {
        const std::size_t n = 100000;
        const double c = std::sqrt(spec.target_autocorrelation(0.0, 0.01));
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            NoiseStream stream(spec, 7, j, 0.01);
            sum += stream.next_real();
        }
        CHECK(std::abs(sum / n) < 4.0 * c / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("matched OU noise realizes the high-temperature bath spectrum") {
    // OU with C(0) = 2 λ k_B T and τ = 1/ω_c; its Welch power spectrum must
    // reproduce 4 λ k_B T ω_c / (ω² + ω_c²).
    const double lambda = 0.5, k_b_t = 1.0, omega_c = 1.0;
    const auto bp = bath::BathParameters::thermal(
        bath::SpectralDensity::lorentz_drude(lambda, omega_c), 1.0 / k_b_t);
    const auto spec = NoiseProcessSpec::ou(2.0 * lambda * k_b_t, 1.0 / omega_c);

    const double dt = 0.05;
    const std::size_t seg_len = 4096, n_seg = 256;
    NoiseStream stream(spec, 314, 0, dt);
    const auto samples = real_samples(stream, seg_len * n_seg);

    for (const double omega : {0.0, 0.46, 0.96, 1.99}) {
        // Periodograms per segment; rectangular window, segment length >> τ.
        std::vector<double> periodogram(n_seg);
        for (std::size_t s = 0; s < n_seg; ++s) {
            std::complex<double> f{0.0, 0.0};
            for (std::size_t j = 0; j < seg_len; ++j) {
                const double phase = omega * dt * static_cast<double>(j);
                f += samples[s * seg_len + j] *
                     std::complex<double>(std::cos(phase), -std::sin(phase));
            }
            periodogram[s] = dt * std::norm(f) / static_cast<double>(seg_len);
        }
        double mean = std::accumulate(periodogram.begin(), periodogram.end(), 0.0) / n_seg;
        double var = 0.0;
        for (const double p : periodogram) var += (p - mean) * (p - mean);
        var /= static_cast<double>(n_seg - 1);
        const double se = std::sqrt(var / n_seg);

        const double target = bath::high_temperature_power_spectrum(bp, omega);
        CHECK(std::abs(mean - target) < 4.0 * se + 0.03 * target);
    }
}

TEST_CASE("autocorrelation of degenerate sequences") {
    const double dt = 1.0;

    std::vector<double> constant(10000, 2.0);
    const auto cacf = noise::estimate_autocorrelation(std::span<const double>(constant), 10, dt);
    for (std::size_t k = 0; k <= 10; ++k) {
        const double n = static_cast<double>(constant.size());
        // 1/N normalization: exactly a² (N-k)/N, i.e. a² up to O(k/N).
        CHECK(cacf.values()[k].real() ==
              doctest::Approx(4.0 * (n - k) / n).epsilon(1e-12));
        CHECK(std::abs(cacf.values()[k].real() - 4.0) <= 4.0 * (k / n) + 1e-12);
    }

    std::vector<double> alternating(10000);
    for (std::size_t i = 0; i < alternating.size(); ++i)
        alternating[i] = i % 2 == 0 ? 1.0 : -1.0;
    const auto aacf =
        noise::estimate_autocorrelation(std::span<const double>(alternating), 7, dt);
    for (std::size_t k = 0; k <= 7; ++k) {
        const double n = static_cast<double>(alternating.size());
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        CHECK(aacf.values()[k].real() ==
              doctest::Approx(sign * (n - k) / n).epsilon(1e-12));
    }

    CHECK_THROWS_AS(
        noise::estimate_autocorrelation(std::span<const double>(constant), 10000, dt),
        std::invalid_argument);
}

TEST_CASE("white-noise target autocorrelation is the discrete delta") {
    const auto spec = NoiseProcessSpec::complex_white(0.5);
    CHECK(spec.target_autocorrelation(0.0, 0.01) == doctest::Approx(50.0));
    CHECK(spec.target_autocorrelation(0.01, 0.01) == 0.0);
}
