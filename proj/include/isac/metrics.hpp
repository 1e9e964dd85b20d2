// metrics.hpp - 3 dB width, PSLR and ISLR of a one-dimensional AF cut
//
// The mainlobe is anchored at the axis origin. On each side it first climbs
// over any interpolation ripple next to the origin, then runs downhill to the
// first local minimum (or to the cut edge when the cut keeps decaying).
// Everything outside it is sidelobe. The 3 dB points are the first crossings
// of anchor/sqrt(2) going outward, placed by linear interpolation between the
// bracketing samples. Cuts without a usable origin sample fall back to the
// largest sample as anchor.
#pragma once

#include "isac/ambiguity.hpp"
#include "isac/types.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace isac {

struct CutFlags {
    bool width_clamped = false;  // a 3 dB crossing was missing on some side
    bool no_sidelobes = false;   // mainlobe spans the whole cut
    bool flat_cut = false;       // all samples equal the peak (to 1e-9)
};

struct MainlobeBounds {
    std::size_t lo = 0;  // sample indices, inclusive
    std::size_t hi = 0;
    double lo_axis = 0.0;
    double hi_axis = 0.0;
    bool lo_at_edge = false;
    bool hi_at_edge = false;

    bool empty_sidelobes(std::size_t size) const { return lo == 0 && hi + 1 == size; }
};

struct CutMetrics {
    double width_3db = 0.0;
    std::optional<double> pslr_db;
    std::optional<double> islr_db;
    double mainlobe_lo = 0.0;
    double mainlobe_hi = 0.0;
    CutFlags flags;
};

inline constexpr double kLocalMinimumTolerance = 1e-12;
inline constexpr double kFlatTolerance = 1e-9;

namespace detail {

inline void require_cut(const AfCut& cut) {
    if (cut.values.empty() || cut.values.size() != cut.axis.size()) {
        throw InputError("cut: values and axis must be non-empty and of equal length");
    }
}

/// Largest sample; among equal maxima the one nearest the axis origin.
inline std::size_t peak_index(const AfCut& cut) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cut.values.size(); ++i) {
        const double v = cut.values[i];
        const double b = cut.values[best];
        if (v > b || (v == b && std::abs(cut.axis[i]) < std::abs(cut.axis[best]))) best = i;
    }
    return best;
}

inline double peak_value(const AfCut& cut) { return cut.values[peak_index(cut)]; }

/// The sample at axis 0 when the axis contains 0 and the value there is
/// positive, otherwise the largest sample.
inline std::size_t anchor_index(const AfCut& cut) {
    for (std::size_t i = 0; i < cut.axis.size(); ++i) {
        if (cut.axis[i] == 0.0 && cut.values[i] > 0.0) return i;
    }
    return peak_index(cut);
}

}  // namespace detail

inline bool is_flat(const AfCut& cut) {
    detail::require_cut(cut);
    const auto [lo, hi] = std::minmax_element(cut.values.begin(), cut.values.end());
    return *hi - *lo <= kFlatTolerance * std::abs(*hi);
}

inline MainlobeBounds mainlobe_bounds(const AfCut& cut) {
    detail::require_cut(cut);
    const auto& v = cut.values;
    const std::size_t n = v.size();
    const std::size_t c = detail::anchor_index(cut);
    const double tol = kLocalMinimumTolerance * detail::peak_value(cut);

    MainlobeBounds b;
    // Climb while rising, then walk downhill until the next sample rises by
    // more than tol.
    std::size_t hi = c;
    while (hi + 1 < n && v[hi + 1] > v[hi] + tol) ++hi;
    while (hi + 1 < n && v[hi + 1] <= v[hi] + tol) ++hi;
    std::size_t lo = c;
    while (lo > 0 && v[lo - 1] > v[lo] + tol) --lo;
    while (lo > 0 && v[lo - 1] <= v[lo] + tol) --lo;
    if (is_flat(cut)) {
        lo = 0;
        hi = n - 1;
    }
    b.lo = lo;
    b.hi = hi;
    b.lo_at_edge = lo == 0;
    b.hi_at_edge = hi + 1 == n;
    b.lo_axis = cut.axis[lo];
    b.hi_axis = cut.axis[hi];
    return b;
}

struct Width3dB {
    double width = 0.0;
    double lo = 0.0;  // crossing coordinates
    double hi = 0.0;
    bool clamped = false;
};

inline Width3dB width_3db_detail(const AfCut& cut) {
    detail::require_cut(cut);
    const auto& v = cut.values;
    const auto& a = cut.axis;
    const std::size_t n = v.size();
    const std::size_t c = detail::anchor_index(cut);
    const double threshold = v[c] / std::sqrt(2.0);

    Width3dB w;
    w.hi = a.back();
    bool found_hi = false;
    for (std::size_t i = c + 1; i < n; ++i) {
        if (v[i] < threshold) {
            const double t = (v[i - 1] - threshold) / (v[i - 1] - v[i]);
            w.hi = a[i - 1] + t * (a[i] - a[i - 1]);
            found_hi = true;
            break;
        }
    }
    w.lo = a.front();
    bool found_lo = false;
    for (std::size_t i = c; i-- > 0;) {
        if (v[i] < threshold) {
            const double t = (v[i + 1] - threshold) / (v[i + 1] - v[i]);
            w.lo = a[i + 1] + t * (a[i] - a[i + 1]);
            found_lo = true;
            break;
        }
    }
    w.clamped = !(found_hi && found_lo);
    w.width = w.hi - w.lo;
    return w;
}

inline double width_3db(const AfCut& cut) { return width_3db_detail(cut).width; }

/// 20 log10(max sidelobe / max mainlobe); empty when there are no sidelobes.
inline std::optional<double> pslr(const AfCut& cut, const MainlobeBounds& bounds) {
    const auto& v = cut.values;
    if (bounds.empty_sidelobes(v.size())) return std::nullopt;
    double side = 0.0;
    for (std::size_t i = 0; i < bounds.lo; ++i) side = std::max(side, v[i]);
    for (std::size_t i = bounds.hi + 1; i < v.size(); ++i) side = std::max(side, v[i]);
    const double main = *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(bounds.lo),
                                          v.begin() + static_cast<std::ptrdiff_t>(bounds.hi) + 1);
    return 20.0 * std::log10(side / main);
}

inline std::optional<double> pslr(const AfCut& cut) { return pslr(cut, mainlobe_bounds(cut)); }

/// 10 log10(sidelobe energy / mainlobe energy) over grid samples; empty when
/// the sidelobe region is empty. Zero sidelobe energy yields -infinity.
inline std::optional<double> islr(const AfCut& cut, const MainlobeBounds& bounds) {
    const auto& v = cut.values;
    if (bounds.empty_sidelobes(v.size())) return std::nullopt;
    double side = 0.0;
    double main = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double e = v[i] * v[i];
        if (i < bounds.lo || i > bounds.hi) {
            side += e;
        } else {
            main += e;
        }
    }
    return 10.0 * std::log10(side / main);
}

inline std::optional<double> islr(const AfCut& cut) { return islr(cut, mainlobe_bounds(cut)); }

inline CutMetrics analyze_cut(const AfCut& cut) {
    detail::require_cut(cut);
    CutMetrics m;
    if (!(detail::peak_value(cut) > 0.0)) {
        // Nothing to measure on an all-zero cut.
        m.flags.flat_cut = true;
        m.flags.width_clamped = true;
        m.flags.no_sidelobes = true;
        m.width_3db = cut.axis.back() - cut.axis.front();
        m.mainlobe_lo = cut.axis.front();
        m.mainlobe_hi = cut.axis.back();
        return m;
    }
    const auto bounds = mainlobe_bounds(cut);
    const auto w = width_3db_detail(cut);
    m.width_3db = w.width;
    m.mainlobe_lo = bounds.lo_axis;
    m.mainlobe_hi = bounds.hi_axis;
    m.pslr_db = pslr(cut, bounds);
    m.islr_db = islr(cut, bounds);
    m.flags.width_clamped = w.clamped;
    m.flags.no_sidelobes = bounds.empty_sidelobes(cut.values.size());
    m.flags.flat_cut = is_flat(cut);
    return m;
}

}  // namespace isac
