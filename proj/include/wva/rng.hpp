#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wva {

/// SplitMix64: 64-bit state, passes BigCrush, and splits cleanly into
/// independent streams, which makes per-worker reproducibility trivial.
/// See https://prng.di.unimi.it.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Worker stream k is seeded by the (k+1)-th output of SplitMix64(seed), so
/// runs are reproducible for a fixed worker count and workers never share a
/// sequence.
inline std::uint64_t worker_seed(std::uint64_t seed, unsigned worker) {
    SplitMix64 root(seed);
    std::uint64_t s = 0;
    for (unsigned k = 0; k <= worker; ++k) s = root();
    return s;
}

/// Uniform and Gaussian variates on top of SplitMix64. Gaussians use the
/// trigonometric Box-Muller form: exactly two uniforms per draw, no
/// branching, so the consumption pattern is fixed.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        // First uniform shifted into (0, 1] so the log is always finite.
        const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    SplitMix64 gen_;
};

} // namespace wva
