#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace swarmforge {

/// Deterministic uniform stream. Same seed and draw order give the same
/// variate sequence on every platform (mt19937_64 is fully specified by
/// the standard; the [0,1) mapping below avoids std::uniform_real_distribution,
/// whose output is implementation-defined).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    std::uint64_t seed() const { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace detail

/// Named sub-stream derivation: all randomness in a run flows from one root
/// seed, with independent streams for "world", "swarm", per-trial indices etc.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view tag) {
    return detail::splitmix64(root ^ detail::fnv1a64(tag));
}

inline std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                                 std::uint64_t index) {
    return detail::splitmix64(derive_seed(root, tag) + index);
}

} // namespace swarmforge
