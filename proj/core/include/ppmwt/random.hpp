#pragma once

#include <cstdint>

namespace ppmwt {

/// Deterministic random stream: xoshiro256++ seeded through splitmix64 from a
/// (seed, stream) pair. Every draw is fully specified here, so sequences are
/// bit-identical across platforms and standard libraries; per-trial substreams
/// come from distinct `stream` values, which keeps parallel simulations
/// reproducible independent of worker count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t x = splitmix(seed) ^ (stream * 0x9E3779B97F4A7C15ULL);
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            word = splitmix(x);
        }
        // all-zero state is a fixed point of the generator
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
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

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;  // multiple of n
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % n;
    }

    /// Uniform `count`-bit value, count <= 64. count == 0 yields 0.
    std::uint64_t bits(unsigned count) {
        if (count == 0) return 0;
        return next_u64() >> (64u - count);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

}  // namespace ppmwt
