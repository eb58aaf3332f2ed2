// noise.hpp — Stationary stochastic processes with reproducible streams
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "deco/bath.hpp"
#include "deco/rng.hpp"
#include "deco/time_grid.hpp"

namespace deco::noise {

// Real Gaussian process with C(t) = variance * exp(-|t|/corr_time).
struct OuProcess {
    double variance;  // C(0), energy²
    double corr_time; // τ, time
};

struct ExponentialTerm {
    double weight;    // |c_n|², contribution to C(0)
    double corr_time; // τ_n
};

// Real Gaussian process with C(t) = Σ_n weight_n * exp(-|t|/τ_n), realized as
// a weighted sum of independent unit-variance OU components.
struct SumOfExponentials {
    std::vector<ExponentialTerm> terms;
};

// Circular complex white noise with <η(t) η*(t')> = rate * δ(t - t') and
// <η(t) η(t')> = 0.
struct ComplexWhite {
    double rate; // γ, 1/time
};

class NoiseProcessSpec {
public:
    enum class Kind { ou, sum_of_exponentials, complex_white };

    static NoiseProcessSpec ou(double variance, double corr_time);
    static NoiseProcessSpec sum_of_exponentials(std::vector<ExponentialTerm> terms);
    static NoiseProcessSpec complex_white(double rate);

    Kind kind() const noexcept;
    bool is_real() const noexcept { return kind() != Kind::complex_white; }

    const OuProcess& ou_params() const;
    const SumOfExponentials& sum_params() const;
    const ComplexWhite& white_params() const;

    // Target autocorrelation at a time lag; for complex white noise this is
    // the discrete-delta value rate/dt at lag 0 and 0 elsewhere.
    double target_autocorrelation(double lag, double dt) const;

private:
    explicit NoiseProcessSpec(std::variant<OuProcess, SumOfExponentials, ComplexWhite> v)
        : v_(std::move(v)) {}

    std::variant<OuProcess, SumOfExponentials, ComplexWhite> v_;
};

// Sampled realization of a NoiseProcessSpec on a fixed time step. Streams with
// identical (spec, master_seed, trajectory_index, dt) reproduce the same
// samples bit for bit; distinct trajectory indices are independent.
//
// Real Gaussian variants use the exact one-step OU update
//   u_{i+1} = u_i e^{-dt/τ} + sqrt(1 - e^{-2dt/τ}) ξ_i,
// started from the stationary distribution, so neither the marginal nor the
// autocorrelation carries a dt-discretization bias.
class NoiseStream {
public:
    NoiseStream(NoiseProcessSpec spec, std::uint64_t master_seed,
                std::uint64_t trajectory_index, double dt);

    // Next sample of a real Gaussian variant (first call returns the t = 0
    // stationary sample).
    double next_real();
    // Next sample of the complex white variant: sqrt(rate/(2 dt)) (x + i y).
    std::complex<double> next_complex();

    const NoiseProcessSpec& spec() const noexcept { return spec_; }
    double dt() const noexcept { return dt_; }
    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t trajectory_index() const noexcept { return trajectory_index_; }

    // Unit-variance component values behind the last real sample, one per
    // exponential term.
    std::span<const double> component_values() const noexcept { return components_; }

private:
    struct Component {
        double coefficient; // c_n = sqrt(weight)
        double decay;       // e^{-dt/τ_n}
        double kick;        // sqrt(1 - e^{-2dt/τ_n})
        rng::Stream rng;
    };

    NoiseProcessSpec spec_;
    std::uint64_t master_seed_;
    std::uint64_t trajectory_index_;
    double dt_;
    bool started_ = false;
    std::vector<Component> ou_components_;
    std::vector<double> components_;
    double white_amplitude_ = 0.0;
};

NoiseStream make_ou_stream(const NoiseProcessSpec& spec, std::uint64_t master_seed,
                           std::uint64_t trajectory_index, double dt);
NoiseStream make_sum_of_exponentials_stream(const NoiseProcessSpec& spec,
                                            std::uint64_t master_seed,
                                            std::uint64_t trajectory_index, double dt);
NoiseStream make_complex_white_stream(const NoiseProcessSpec& spec, std::uint64_t master_seed,
                                      std::uint64_t trajectory_index, double dt);

// Biased (1/N-normalized) stationary autocorrelation estimate at lags
// 0..max_lag with delete-block jackknife standard errors. The 1/N norm keeps
// the implied spectral estimate positive semidefinite.
bath::CorrelationFunction estimate_autocorrelation(std::span<const std::complex<double>> samples,
                                                   std::size_t max_lag, double dt);
bath::CorrelationFunction estimate_autocorrelation(std::span<const double> samples,
                                                   std::size_t max_lag, double dt);

} // namespace deco::noise
