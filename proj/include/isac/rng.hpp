// rng.hpp - reproducible, order-independent random streams
//
// Every random draw in the library comes from a stream keyed by
// (seed, index, purpose). The key is hashed with SplitMix64 into the seed of
// a std::mt19937_64, so realization r of a campaign sees the same numbers no
// matter which worker computes it or in which order.
#pragma once

#include <cstdint>
#include <random>

namespace isac::rng {

enum class Purpose : std::uint64_t {
    symbols = 0x53594d42,      // "SYMB"
    permutation = 0x5045524d,  // "PERM"
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index, Purpose purpose) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ index);
    return splitmix64(h ^ static_cast<std::uint64_t>(purpose));
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index, Purpose purpose) {
    return std::mt19937_64(stream_seed(seed, index, purpose));
}

/// Uniform integer in [0, bound) by rejection; bound must be nonzero.
/// Written out instead of std::uniform_int_distribution so the sequence is
/// identical across standard library implementations.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
    std::uint64_t v = gen();
    while (v >= limit) v = gen();
    return v % bound;
}

}  // namespace isac::rng
