// interpolation.hpp - windowed-sinc fractional delay
//
// The reconstruction kernel is h(x) = w(x) sinc(x) on |x| <= L_h, with the
// taper evaluated at the continuous distance between the output instant and
// each input sample. For each delta the 2 L_h + 1 taps are scaled to unit
// sum. h is even, so shifting by delta and by 1 - delta are mirror images of
// each other.
#pragma once

#include "isac/types.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

namespace isac {

struct Window {
    enum class Kind { hann, kaiser, rectangular };

    Kind kind = Kind::hann;
    double kaiser_beta = 6.0;

    static Window hann() { return {}; }
    static Window kaiser(double beta) { return {Kind::kaiser, beta}; }
    static Window rectangular() { return {Kind::rectangular, 0.0}; }

    /// Taper at offset x for a kernel of half-width `half_width`; w(0) = 1.
    double operator()(double x, double half_width) const {
        const double r = x / half_width;
        if (std::abs(r) > 1.0) return 0.0;
        switch (kind) {
            case Kind::hann:
                return 0.5 * (1.0 + std::cos(kPi * r));
            case Kind::kaiser:
                return std::cyl_bessel_i(0.0, kaiser_beta * std::sqrt(1.0 - r * r)) /
                       std::cyl_bessel_i(0.0, kaiser_beta);
            case Kind::rectangular:
                return 1.0;
        }
        return 0.0;
    }
};

inline std::string window_name(const Window& w) {
    switch (w.kind) {
        case Window::Kind::hann: return "hann";
        case Window::Kind::kaiser: return "kaiser";
        case Window::Kind::rectangular: return "rectangular";
    }
    return "unknown";
}

/// Normalized sinc, exactly 0 at nonzero integers and exactly 1 at 0.
inline double sinc(double x) {
    if (x == std::round(x)) return x == 0.0 ? 1.0 : 0.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}

inline double interpolation_kernel(double x, int half_width, const Window& window) {
    if (std::abs(x) > half_width) return 0.0;
    return window(x, half_width) * sinc(x);
}

/// Samples y[n] = s_interp(n - delta) for n in [first, first + size).
/// Inputs outside [0, N-1] are zero, so the output extends L_h samples past
/// both ends of the block.
struct ShiftedSignal {
    CVec samples;
    std::ptrdiff_t first = 0;

    Complex at(std::ptrdiff_t n) const {
        const std::ptrdiff_t i = n - first;
        if (i < 0 || i >= static_cast<std::ptrdiff_t>(samples.size())) return {};
        return samples[static_cast<std::size_t>(i)];
    }
};

inline ShiftedSignal fractional_shift(std::span<const Complex> s, double delta, int half_width,
                                      const Window& window = {}) {
    if (!(delta >= 0.0 && delta < 1.0)) throw InputError("fractional_shift: delta must be in [0, 1)");
    if (half_width < 1) throw InputError("fractional_shift: L_h must be >= 1");
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    ShiftedSignal out;
    out.first = -half_width;
    out.samples.assign(static_cast<std::size_t>(n + 2 * half_width), Complex{});

    if (delta == 0.0) {
        for (std::ptrdiff_t i = 0; i < n; ++i) out.samples[static_cast<std::size_t>(i + half_width)] = s[static_cast<std::size_t>(i)];
        return out;
    }

    // Tap weights depend only on the offset k = m - p, k in [-L_h, L_h]. They
    // are scaled to unit sum so a constant input stays constant; the bare
    // truncated kernel is up to 0.3% hot at delta = 0.5 (Hann, L_h = 4).
    std::vector<double> taps(static_cast<std::size_t>(2 * half_width + 1));
    double gain = 0.0;
    for (int k = -half_width; k <= half_width; ++k) {
        const double t = interpolation_kernel(-delta - k, half_width, window);
        taps[static_cast<std::size_t>(k + half_width)] = t;
        gain += t;
    }
    for (auto& t : taps) t /= gain;
    for (std::ptrdiff_t p = -half_width; p < n + half_width; ++p) {
        Complex acc{};
        for (int k = -half_width; k <= half_width; ++k) {
            const std::ptrdiff_t m = p + k;
            if (m < 0 || m >= n) continue;
            acc += s[static_cast<std::size_t>(m)] * taps[static_cast<std::size_t>(k + half_width)];
        }
        out.samples[static_cast<std::size_t>(p + half_width)] = acc;
    }
    return out;
}

}  // namespace isac
