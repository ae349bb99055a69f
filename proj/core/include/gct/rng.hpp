#pragma once

#include <cstdint>
#include <random>

namespace gct {

using Rng = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Derives an independent stream seed from a master seed and up to two
/// role/index tags. Same inputs always give the same seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = detail::splitmix64(seed);
    h = detail::splitmix64(h ^ (a + 0x632be59bd9b4e019ULL));
    h = detail::splitmix64(h ^ (b + 0x9e6c63d0176a0aefULL));
    return h;
}

}  // namespace gct
