#pragma once

#include <cstdint>
#include <random>

namespace burnsolver {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent child seeds from a base
// seed plus salt values so that every rng stream is reproducible.
inline std::uint64_t mix_bits(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base) { return mix_bits(base); }

template <typename... Salts>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt, Salts... rest) {
    return derive_seed(mix_bits(base ^ mix_bits(salt)), rest...);
}

template <typename... Salts>
Rng make_rng(std::uint64_t base, Salts... salts) {
    return Rng(derive_seed(base, static_cast<std::uint64_t>(salts)...));
}

// Unbiased integer in [0, n). Hand-rolled instead of
// std::uniform_int_distribution so results are identical across standard
// library implementations.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double draw_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace burnsolver
