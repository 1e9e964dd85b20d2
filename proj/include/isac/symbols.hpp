// symbols.hpp - information symbol blocks (random square QAM or all-ones)
#pragma once

#include "isac/rng.hpp"
#include "isac/types.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>

namespace isac {

struct RandomQam {
    int order = 16;               // M
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;     // realization index within a campaign
};

struct Unimodular {};

using SymbolMode = std::variant<RandomQam, Unimodular>;

struct SymbolBlock {
    CVec values;
    SymbolMode mode;

    std::size_t size() const { return values.size(); }
};

inline bool is_supported_qam_order(int order) {
    return order == 4 || order == 16 || order == 64 || order == 256;
}

/// Square M-QAM points in row-major lattice order (top row first, left to
/// right), scaled to unit average power.
inline CVec qam_constellation(int order) {
    if (!is_supported_qam_order(order)) {
        throw ConfigError("M: unsupported QAM order " + std::to_string(order) +
                          " (expected 4, 16, 64 or 256)");
    }
    const int side = static_cast<int>(std::lround(std::sqrt(order)));
    const double scale = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);
    CVec points;
    points.reserve(static_cast<std::size_t>(order));
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            const double re = 2.0 * col - (side - 1);
            const double im = (side - 1) - 2.0 * row;
            points.emplace_back(re * scale, im * scale);
        }
    }
    return points;
}

inline SymbolBlock generate_symbols(const SymbolMode& mode, std::size_t n) {
    if (n < 2) throw ConfigError("N: block length must be at least 2");
    SymbolBlock block{CVec(n), mode};
    if (std::holds_alternative<Unimodular>(mode)) {
        std::fill(block.values.begin(), block.values.end(), Complex{1.0, 0.0});
        return block;
    }
    const auto& qam = std::get<RandomQam>(mode);
    const CVec points = qam_constellation(qam.order);
    auto gen = rng::make_stream(qam.seed, qam.stream, rng::Purpose::symbols);
    for (auto& v : block.values) {
        v = points[rng::bounded(gen, points.size())];
    }
    return block;
}

}  // namespace isac
