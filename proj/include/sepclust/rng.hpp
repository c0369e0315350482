#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace sepclust {

// Seed mixing and uniform draws are hand-rolled on top of mt19937_64 so that
// identical seeds reproduce identical runs regardless of the standard
// library's distribution implementations.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent generator for substream `index` of a master seed.
inline std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t index = 0) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(uniform_unit(rng) * static_cast<double>(n)) % n;
}

/// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
inline std::vector<std::size_t> sample_without_replacement(std::mt19937_64& rng,
                                                           std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + uniform_index(rng, n - i);
        std::swap(pool[i], pool[j]);
        out[i] = pool[i];
    }
    return out;
}

} // namespace sepclust
