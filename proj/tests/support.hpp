// Shared helpers for the test binaries that are not oracles themselves.
#pragma once

#include "isac/metrics.hpp"

#include <cmath>

namespace support {

/// Mean sidelobe power in dB: 10 log10 of the mean |A|^2 outside the mainlobe.
inline double sidelobe_floor_db(const isac::AfCut& cut) {
    const auto b = isac::mainlobe_bounds(cut);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < cut.values.size(); ++i) {
        if (i >= b.lo && i <= b.hi) continue;
        sum += cut.values[i] * cut.values[i];
        ++count;
    }
    return count == 0 ? -HUGE_VAL : 10.0 * std::log10(sum / static_cast<double>(count));
}

}  // namespace support
