// permutation.hpp - permutation descriptors for the CP-AFDM chirp sequence
//
// A resolved permutation is an index array p with (Pi v)[n] = v[p[n]].
#pragma once

#include "isac/rng.hpp"
#include "isac/types.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

namespace isac {

using IndexArray = std::vector<std::size_t>;

struct IdentityPermutation {};

struct ExplicitPermutation {
    IndexArray indices;
};

struct SeededPermutation {
    std::uint64_t seed = 0;
};

/// Rank in the lexicographic enumeration of all N! orderings, 0-based.
struct LexRankPermutation {
    std::uint64_t rank = 0;
};

using PermutationSpec =
    std::variant<IdentityPermutation, ExplicitPermutation, SeededPermutation, LexRankPermutation>;

inline constexpr std::size_t kMaxLexRankLength = 20;  // 20! < 2^64 < 21!

inline bool is_bijection(const IndexArray& p) {
    std::vector<bool> seen(p.size(), false);
    for (auto i : p) {
        if (i >= p.size() || seen[i]) return false;
        seen[i] = true;
    }
    return true;
}

/// Fisher-Yates shuffle of the identity driven by the permutation stream.
inline IndexArray seeded_permutation(std::uint64_t seed, std::uint64_t stream, std::size_t n) {
    IndexArray p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    auto gen = rng::make_stream(seed, stream, rng::Purpose::permutation);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng::bounded(gen, i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

inline IndexArray unrank_lexicographic(std::uint64_t rank, std::size_t n) {
    if (n > kMaxLexRankLength) {
        throw UnsupportedError("lex_rank: only supported for N <= 20 (got N = " +
                               std::to_string(n) + ")");
    }
    std::vector<std::uint64_t> factorial(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;
    if (rank >= factorial[n]) {
        throw InputError("lex_rank: rank " + std::to_string(rank) + " is not below N! for N = " +
                         std::to_string(n));
    }
    IndexArray pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    IndexArray p;
    p.reserve(n);
    for (std::size_t i = n; i > 0; --i) {
        const auto digit = static_cast<std::size_t>(rank / factorial[i - 1]);
        rank %= factorial[i - 1];
        p.push_back(pool[digit]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return p;
}

inline IndexArray resolve_permutation(const PermutationSpec& spec, std::size_t n) {
    if (n < 1) throw InputError("permutation: length must be at least 1");
    return std::visit(
        [n](const auto& p) -> IndexArray {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, IdentityPermutation>) {
                IndexArray id(n);
                std::iota(id.begin(), id.end(), std::size_t{0});
                return id;
            } else if constexpr (std::is_same_v<T, ExplicitPermutation>) {
                if (p.indices.size() != n || !is_bijection(p.indices)) {
                    throw InputError("permutation: explicit array is not a bijection on {0..N-1}");
                }
                return p.indices;
            } else if constexpr (std::is_same_v<T, SeededPermutation>) {
                return seeded_permutation(p.seed, 0, n);
            } else {
                return unrank_lexicographic(p.rank, n);
            }
        },
        spec);
}

}  // namespace isac
