#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hgc {

// Seeded generator wrapper. All randomness in the library flows through
// this so runs are reproducible from a single seed.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed = 0) : eng(seed) {}

    // unbiased uniform draw from [0, n), n >= 1 (rejection sampling)
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do { x = eng(); } while (x >= limit);
        return x % n;
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    // uniform double in [0, 1)
    double canonical() { return (eng() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return canonical() < p; }
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace hgc
