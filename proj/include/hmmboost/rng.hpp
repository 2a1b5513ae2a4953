#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hmmboost {

// Seed derivation used everywhere a child seed is needed (restart index,
// fold, draw, per-sample morphing, ...). Child seed = one splitmix64
// avalanche step applied to master + (stream + 1) * golden ratio constant.
// Fixed here so that reruns and documentation agree; see README.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t x = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// FNV-1a; used to fold strings (family names, tags) into seed streams.
// std::hash is implementation-defined, this is stable.
inline std::uint64_t hash64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// mt19937_64 with hand-rolled output conversions. The engine is bit-exact
// per the standard; std distributions are not, so we avoid them.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t x = gen_();
            if (x >= threshold) return x % bound;
        }
    }

    // Index draw from an unnormalized non-negative weight row.
    std::size_t pick_weighted(const double* weights, std::size_t n) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += weights[i];
        double u = uniform() * total;
        for (std::size_t i = 0; i < n; ++i) {
            u -= weights[i];
            if (u < 0.0) return i;
        }
        return n - 1;
    }

    // Fisher-Yates; std::shuffle's use of the engine is unspecified.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace hmmboost
