#pragma once

#include <cmath>
#include <cstdint>

namespace minlab {

// Canonical representative in [0, 1).
inline double mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r += 1.0;
    return r;
}

// Signed representative in (-1/2, 1/2].
inline double signed_mod1(double x) {
    double r = mod1(x);
    return r > 0.5 ? r - 1.0 : r;
}

// Distance on R/Z between representatives in [0, 1).
inline double circle_dist(double a, double b) {
    double d = std::fabs(a - b);
    return d > 0.5 ? 1.0 - d : d;
}

/**
 * Deterministic 64-bit generator (splitmix64). Used instead of <random>
 * engines+distributions so that sampled test data and report bundles are
 * byte-identical across standard library implementations.
 */
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

  private:
    std::uint64_t state_;
};

}  // namespace minlab
