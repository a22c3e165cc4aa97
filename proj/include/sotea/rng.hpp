#pragma once

/// @file rng.hpp
/// @brief Seedable generator plus platform-independent sampling helpers.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not. Every draw in the library goes through the helpers
/// below so that a seed maps to the same run on every conforming platform.

#include <cstdint>
#include <random>
#include <stdexcept>

namespace sotea {

using Rng = std::mt19937_64;

/// Named sub-streams of a master seed.
enum class Stream : std::uint64_t {
    landscape = 1,
    init = 2,
    reproduction = 3,
    competition = 4,
    replication = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based derivation: seed for (master, stream, index).
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                    std::uint64_t index = 0) noexcept {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream) * 0xD6E8FEB86659FD93ULL);
    return splitmix64(h ^ splitmix64(index));
}

inline Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t index = 0) {
    return Rng{derive_seed(master, stream, index)};
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_index: empty range");
    }
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

} // namespace sotea
