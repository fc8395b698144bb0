#pragma once

// Self-contained pseudo-random machinery so simulation output is bit-stable
// across platforms and standard-library versions: xoshiro256++ streams seeded
// through splitmix64, plus a Box-Muller normal sampler.

#include <cstdint>

namespace gbf::rng {

inline std::uint64_t mix64(std::uint64_t x) noexcept {
    // splitmix64 finalizer
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed. `stream` separates
// roles (design draws vs. replicate noise), `index` enumerates items within a
// role (replicate number). The scheme is pure arithmetic on the inputs, so
// replicate k gets the same draws no matter how work is split across threads.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) noexcept {
    std::uint64_t h = mix64(master + 0x9E3779B97F4A7C15ull * (stream + 1));
    return mix64(h ^ (index + 0x9E3779B97F4A7C15ull));
}

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += 0x9E3779B97F4A7C15ull;
            word = mix64(sm);
        }
    }

    std::uint64_t next() noexcept {
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

    // Uniform on the open interval (0, 1).
    double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

// Standard normal variates via Box-Muller on a Xoshiro256pp stream.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) noexcept : gen_(seed) {}

    double operator()() noexcept;

    Xoshiro256pp& generator() noexcept { return gen_; }

private:
    Xoshiro256pp gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gbf::rng
