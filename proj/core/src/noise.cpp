#include "deco/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deco::noise {

NoiseProcessSpec NoiseProcessSpec::ou(double variance, double corr_time) {
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("NoiseProcessSpec: OU variance must be positive");
    if (!(corr_time > 0.0) || !std::isfinite(corr_time))
        throw std::invalid_argument("NoiseProcessSpec: OU correlation time must be positive");
    return NoiseProcessSpec(OuProcess{variance, corr_time});
}

NoiseProcessSpec NoiseProcessSpec::sum_of_exponentials(std::vector<ExponentialTerm> terms) {
    if (terms.empty())
        throw std::invalid_argument("NoiseProcessSpec: term list must not be empty");
    for (const auto& t : terms) {
        if (!(t.weight > 0.0) || !std::isfinite(t.weight))
            throw std::invalid_argument("NoiseProcessSpec: term weights must be positive");
        if (!(t.corr_time > 0.0) || !std::isfinite(t.corr_time))
            throw std::invalid_argument("NoiseProcessSpec: term correlation times must be positive");
    }
    return NoiseProcessSpec(SumOfExponentials{std::move(terms)});
}

NoiseProcessSpec NoiseProcessSpec::complex_white(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("NoiseProcessSpec: white-noise rate must be positive");
    return NoiseProcessSpec(ComplexWhite{rate});
}

NoiseProcessSpec::Kind NoiseProcessSpec::kind() const noexcept {
    if (std::holds_alternative<OuProcess>(v_)) return Kind::ou;
    if (std::holds_alternative<SumOfExponentials>(v_)) return Kind::sum_of_exponentials;
    return Kind::complex_white;
}

const OuProcess& NoiseProcessSpec::ou_params() const {
    if (kind() != Kind::ou) throw std::logic_error("NoiseProcessSpec: not an OU process");
    return std::get<OuProcess>(v_);
}

const SumOfExponentials& NoiseProcessSpec::sum_params() const {
    if (kind() != Kind::sum_of_exponentials)
        throw std::logic_error("NoiseProcessSpec: not a sum-of-exponentials process");
    return std::get<SumOfExponentials>(v_);
}

const ComplexWhite& NoiseProcessSpec::white_params() const {
    if (kind() != Kind::complex_white)
        throw std::logic_error("NoiseProcessSpec: not a complex white process");
    return std::get<ComplexWhite>(v_);
}

double NoiseProcessSpec::target_autocorrelation(double lag, double dt) const {
    const double u = std::abs(lag);
    switch (kind()) {
        case Kind::ou: {
            const auto& p = std::get<OuProcess>(v_);
            return p.variance * std::exp(-u / p.corr_time);
        }
        case Kind::sum_of_exponentials: {
            double c = 0.0;
            for (const auto& t : std::get<SumOfExponentials>(v_).terms)
                c += t.weight * std::exp(-u / t.corr_time);
            return c;
        }
        case Kind::complex_white:
            return u < 0.5 * dt ? std::get<ComplexWhite>(v_).rate / dt : 0.0;
    }
    return 0.0;
}

NoiseStream::NoiseStream(NoiseProcessSpec spec, std::uint64_t master_seed,
                         std::uint64_t trajectory_index, double dt)
    : spec_(std::move(spec)), master_seed_(master_seed), trajectory_index_(trajectory_index),
      dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("NoiseStream: dt must be positive");

    if (spec_.kind() == NoiseProcessSpec::Kind::complex_white) {
        white_amplitude_ = std::sqrt(spec_.white_params().rate / (2.0 * dt_));
        ou_components_.emplace_back(
            Component{0.0, 0.0, 0.0, rng::Stream(master_seed_, trajectory_index_, 0)});
        return;
    }

    std::vector<ExponentialTerm> terms;
    if (spec_.kind() == NoiseProcessSpec::Kind::ou) {
        const auto& p = spec_.ou_params();
        terms.push_back({p.variance, p.corr_time});
    } else {
        terms = spec_.sum_params().terms;
    }
    ou_components_.reserve(terms.size());
    components_.assign(terms.size(), 0.0);
    for (std::size_t n = 0; n < terms.size(); ++n) {
        const double decay = std::exp(-dt_ / terms[n].corr_time);
        ou_components_.push_back(Component{std::sqrt(terms[n].weight), decay,
                                           std::sqrt(1.0 - decay * decay),
                                           rng::Stream(master_seed_, trajectory_index_, n)});
    }
}

double NoiseStream::next_real() {
    if (!spec_.is_real())
        throw std::logic_error("NoiseStream: complex white noise has no real samples");
    double sample = 0.0;
    for (std::size_t n = 0; n < ou_components_.size(); ++n) {
        auto& c = ou_components_[n];
        if (!started_)
            components_[n] = c.rng.normal();
        else
            components_[n] = components_[n] * c.decay + c.kick * c.rng.normal();
        sample += c.coefficient * components_[n];
    }
    started_ = true;
    return sample;
}

std::complex<double> NoiseStream::next_complex() {
    if (spec_.is_real())
        throw std::logic_error("NoiseStream: real noise has no complex samples");
    return white_amplitude_ * ou_components_[0].rng.complex_normal();
}

namespace {

NoiseStream make_stream_checked(const NoiseProcessSpec& spec, NoiseProcessSpec::Kind expected,
                                const char* what, std::uint64_t master_seed,
                                std::uint64_t trajectory_index, double dt) {
    if (spec.kind() != expected) throw std::invalid_argument(what);
    return NoiseStream(spec, master_seed, trajectory_index, dt);
}

} // namespace

NoiseStream make_ou_stream(const NoiseProcessSpec& spec, std::uint64_t master_seed,
                           std::uint64_t trajectory_index, double dt) {
    return make_stream_checked(spec, NoiseProcessSpec::Kind::ou,
                               "make_ou_stream: spec is not an OU process", master_seed,
                               trajectory_index, dt);
}

NoiseStream make_sum_of_exponentials_stream(const NoiseProcessSpec& spec,
                                            std::uint64_t master_seed,
                                            std::uint64_t trajectory_index, double dt) {
    return make_stream_checked(spec, NoiseProcessSpec::Kind::sum_of_exponentials,
                               "make_sum_of_exponentials_stream: spec is not a sum of exponentials",
                               master_seed, trajectory_index, dt);
}

NoiseStream make_complex_white_stream(const NoiseProcessSpec& spec, std::uint64_t master_seed,
                                      std::uint64_t trajectory_index, double dt) {
    return make_stream_checked(spec, NoiseProcessSpec::Kind::complex_white,
                               "make_complex_white_stream: spec is not complex white noise",
                               master_seed, trajectory_index, dt);
}

bath::CorrelationFunction estimate_autocorrelation(std::span<const std::complex<double>> samples,
                                                   std::size_t max_lag, double dt) {
    const std::size_t n = samples.size();
    if (max_lag >= n)
        throw std::invalid_argument("estimate_autocorrelation: max_lag must be below the sample count");

    std::vector<std::complex<double>> acf(max_lag + 1);
    std::vector<double> std_errors(max_lag + 1);

    // Delete-block jackknife over contiguous product blocks; the estimator is
    // C(k) = S_k / N with S_k the sum of x_{i+k} conj(x_i).
    const std::size_t n_blocks = std::min<std::size_t>(20, std::max<std::size_t>(2, n / 64));
    std::vector<std::complex<double>> block_sums(n_blocks);
    std::vector<std::size_t> block_counts(n_blocks);

    for (std::size_t k = 0; k <= max_lag; ++k) {
        const std::size_t m = n - k;
        std::fill(block_sums.begin(), block_sums.end(), std::complex<double>{0.0, 0.0});
        std::fill(block_counts.begin(), block_counts.end(), std::size_t{0});
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t b = std::min(n_blocks - 1, i * n_blocks / m);
            block_sums[b] += samples[i + k] * std::conj(samples[i]);
            ++block_counts[b];
        }
        std::complex<double> total{0.0, 0.0};
        for (const auto& s : block_sums) total += s;
        acf[k] = total / static_cast<double>(n);

        // Jackknife on the mean of products, rescaled by m/N.
        std::vector<std::complex<double>> loo(n_blocks);
        std::complex<double> loo_mean{0.0, 0.0};
        for (std::size_t b = 0; b < n_blocks; ++b) {
            const double remaining = static_cast<double>(m - block_counts[b]);
            loo[b] = remaining > 0.0 ? (total - block_sums[b]) / remaining : total;
            loo_mean += loo[b];
        }
        loo_mean /= static_cast<double>(n_blocks);
        double var = 0.0;
        for (const auto& v : loo) var += std::norm(v - loo_mean);
        var *= static_cast<double>(n_blocks - 1) / static_cast<double>(n_blocks);
        std_errors[k] = std::sqrt(var) * static_cast<double>(m) / static_cast<double>(n);
    }

    return bath::CorrelationFunction(TimeGrid(dt, max_lag + 1), std::move(acf),
                                     std::move(std_errors));
}

bath::CorrelationFunction estimate_autocorrelation(std::span<const double> samples,
                                                   std::size_t max_lag, double dt) {
    std::vector<std::complex<double>> complex_samples(samples.begin(), samples.end());
    return estimate_autocorrelation(std::span<const std::complex<double>>(complex_samples),
                                    max_lag, dt);
}

} // namespace deco::noise
