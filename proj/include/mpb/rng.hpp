#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mpb {

// splitmix64 step (Vigna). Used for seeding and stream derivation only.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ stream with explicit, portable distributions.
///
/// std::<distribution> implementations are not bit-stable across standard
/// libraries, so every sampler here is spelled out. All simulator output is
/// a pure function of the seed passed in.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    /// Replication-stream contract: stream(seed, i) seeds an independent
    /// generator as splitmix64(seed) XOR (0x9E3779B97F4A7C15 * (i+1)).
    /// Fan-out over replication indices is reproducible at any worker count.
    static Rng substream(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t sm = master_seed;
        const std::uint64_t base = splitmix64_next(sm);
        return Rng(base ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Exponential with given rate; rate must be positive.
    double exponential(double rate) {
        if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
        return -std::log1p(-uniform01()) / rate;
    }

    /// Exact Poisson count via unit-exponential arrivals; O(mean), no
    /// underflow for large means.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0) || !std::isfinite(mean))
            throw std::invalid_argument("poisson: mean must be finite and >= 0");
        std::uint64_t n = 0;
        double acc = -std::log1p(-uniform01());
        while (acc <= mean) {
            ++n;
            acc += -std::log1p(-uniform01());
        }
        return n;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace mpb
