#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace shorsim {

/// All stochastic operations take an explicit generator; there is no ambient
/// entropy anywhere in the library.
using Rng = std::mt19937_64;

// std::uniform_*_distribution output is implementation-defined, which would
// break byte-identical reports across standard libraries. The helpers below
// consume raw mt19937_64 words only.

/// Uniform double in [0, 1) using the top 53 bits of one generator word.
inline double canonical_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound >= 1, by rejection on the top range.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t word;
    do {
        word = rng();
    } while (word >= limit);
    return word % bound;
}

// splitmix64 finalizer; used to derive independent streams from (seed, index).
inline std::uint64_t split_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return split_mix(split_mix(seed ^ split_mix(a)) ^ split_mix(b + 0x51ed2701ull));
}

/// Draw an index from a normalized probability vector by walking its CDF.
/// Degenerate all-zero input cannot occur for normalized states; if rounding
/// leaves the draw past the accumulated mass, the last nonzero cell wins.
inline std::size_t sample_index(const std::vector<double>& probs, Rng& rng) {
    const double u = canonical_double(rng);
    double acc = 0.0;
    std::size_t last_nonzero = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        last_nonzero = i;
        acc += probs[i];
        if (u < acc) return i;
    }
    if (last_nonzero == probs.size()) {
        throw std::logic_error("sample_index: all-zero probability vector");
    }
    return last_nonzero;
}

}  // namespace shorsim
