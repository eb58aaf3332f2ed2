// rng.hpp — Deterministic, independently-keyed random streams
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace deco::rng {

// SplitMix64 finalizer; used to hash stream keys into generator state.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ keyed by (master_seed, stream, substream). Equal keys reproduce
// the same sequence bit for bit; distinct keys give statistically independent
// streams, so trajectories can be generated in any order or in parallel.
class Stream {
public:
    explicit Stream(std::uint64_t master_seed, std::uint64_t stream = 0,
                    std::uint64_t substream = 0) noexcept {
        std::uint64_t h = 0x243f6a8885a308d3ULL;
        h = mix64(h ^ (master_seed + 0x9e3779b97f4a7c15ULL));
        h = mix64(h ^ (stream + 0x452821e638d01377ULL));
        h = mix64(h ^ (substream + 0x13198a2e03707344ULL));
        for (auto& s : state_) {
            h += 0x9e3779b97f4a7c15ULL;
            s = mix64(h);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0, 1]; never returns 0 so it is safe under log().
    double uniform_unit() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller. The second deviate of each pair is
    // cached, keeping consumption deterministic.
    double normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_unit()));
        const double phi = 2.0 * 3.14159265358979323846 * uniform_unit();
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    // Circularly symmetric complex normal: independent N(0,1) components.
    std::complex<double> complex_normal() noexcept {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace deco::rng
