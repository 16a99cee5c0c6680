#pragma once

#include <cmath>
#include <cstdint>

// Seedable, portable random streams. All draws go through mt19937_64 seeded
// via splitmix64 so that a (seed, stream) pair yields the same sequence on
// every platform; nothing here depends on libstdc++ distribution internals.

namespace fdmmf {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent substream seed from a master seed and up to two tags.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b = 0) {
    std::uint64_t s = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
    s = splitmix64(s ^ splitmix64(tag_a));
    s = splitmix64(s ^ splitmix64(tag_b ^ 0xbb67ae8584caa73bULL));
    return s;
}

// xoshiro-free minimal engine wrapper: we only need uniform doubles and
// exponential draws, generated identically everywhere.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(splitmix64(seed)) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
        return z ^ (z >> 33);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; never returns exactly zero.
    double next_double_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // |zeta|^2 for zeta ~ CN(0,1) is Exp(1); draw it directly. Exact zeros
    // are redrawn so generated channel gains stay strictly positive.
    double next_exp_fading() {
        double v = 0.0;
        do {
            v = -std::log(next_double_open());
        } while (!(v > 0.0));
        return v;
    }

private:
    std::uint64_t state_;
};

}  // namespace fdmmf
