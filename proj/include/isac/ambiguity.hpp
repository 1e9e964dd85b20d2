// ambiguity.hpp - interpolated, energy-normalized discrete ambiguity function
//
//   A(tau, nu) = sum_n s[n] conj(s_interp(n - tau)) e^{-j 2 pi nu n}
//
// tau is in samples on the grid m / O_tau, m in [-(N-1) O_tau, (N-1) O_tau];
// nu is in cycles/sample on the grid k / (O_nu N), |k| <= nu_max O_nu N.
// Both grids contain the origin and are symmetric. Correlation is aperiodic.
//
// Reported axes are normalized: tau_norm = tau / N, nu_norm = nu.
// Magnitudes are divided by |A(0,0)| = sum |s[n]|^2, so the origin is exactly 1.
#pragma once

#include "isac/fft.hpp"
#include "isac/interpolation.hpp"
#include "isac/parallel.hpp"
#include "isac/types.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace isac {

struct AfConfig {
    int delay_oversampling = 4;    // O_tau
    int doppler_oversampling = 4;  // O_nu
    int half_width = 4;            // L_h
    Window window{};
    double nu_max = 0.5;           // cycles/sample
    unsigned threads = 0;          // 0: hardware concurrency

    void validate() const {
        if (delay_oversampling < 1) throw ConfigError("otau: delay oversampling must be >= 1");
        if (doppler_oversampling < 1) throw ConfigError("onu: Doppler oversampling must be >= 1");
        if (half_width < 1) throw ConfigError("lh: interpolation half-width must be >= 1");
        if (!(nu_max > 0.0 && nu_max <= 0.5)) throw ConfigError("numax: must lie in (0, 0.5]");
        if (window.kind == Window::Kind::kaiser && !(window.kaiser_beta >= 0.0)) {
            throw ConfigError("window: Kaiser beta must be nonnegative");
        }
    }
};

enum class CutKind { zero_doppler, zero_delay };

inline std::string cut_kind_name(CutKind kind) {
    return kind == CutKind::zero_doppler ? "zero_doppler" : "zero_delay";
}

/// One-dimensional slice of the AF magnitude through the origin.
struct AfCut {
    RVec values;  // |A| / |A(0,0)|
    RVec axis;    // tau_norm or nu, strictly increasing
    CutKind kind = CutKind::zero_doppler;
};

class AfSurface {
public:
    std::size_t delay_count() const { return delay_axis.size(); }
    std::size_t doppler_count() const { return doppler_axis.size(); }

    double at(std::size_t delay_index, std::size_t doppler_index) const {
        return mag[delay_index * doppler_count() + doppler_index];
    }
    std::size_t zero_delay_index() const { return delay_count() / 2; }
    std::size_t zero_doppler_index() const { return doppler_count() / 2; }

    RVec mag;            // row-major [delay][doppler], |A| / |A(0,0)|
    RVec delay_axis;     // tau_norm
    RVec doppler_axis;   // cycles/sample
    double origin_value_raw = 0.0;  // |A(0,0)| before normalization
    std::size_t signal_length = 0;
};

namespace detail {

inline std::ptrdiff_t floor_div(std::ptrdiff_t a, std::ptrdiff_t b) {
    std::ptrdiff_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct DelayGrid {
    std::ptrdiff_t oversampling;
    std::ptrdiff_t half_count;  // grid index m runs over [-half_count, half_count]

    DelayGrid(std::size_t n, int o) : oversampling(o), half_count(static_cast<std::ptrdiff_t>(n - 1) * o) {}

    std::size_t size() const { return static_cast<std::size_t>(2 * half_count + 1); }
    std::ptrdiff_t index_of(std::size_t row) const { return static_cast<std::ptrdiff_t>(row) - half_count; }
    std::ptrdiff_t integer_lag(std::ptrdiff_t m) const { return floor_div(m, oversampling); }
    std::size_t phase(std::ptrdiff_t m) const {
        return static_cast<std::size_t>(m - integer_lag(m) * oversampling);
    }
    // Rows with tau < 0 and a fractional part are mirrored from +tau.
    bool computed_directly(std::ptrdiff_t m) const { return m >= 0 || m % oversampling == 0; }
};

struct DopplerGrid {
    std::size_t fft_length;      // O_nu N
    std::ptrdiff_t half_count;   // k runs over [-half_count, half_count]

    DopplerGrid(std::size_t n, int o, double nu_max)
        : fft_length(n * static_cast<std::size_t>(o)),
          half_count(static_cast<std::ptrdiff_t>(std::floor(nu_max * static_cast<double>(fft_length) + 1e-9))) {}

    std::size_t size() const { return static_cast<std::size_t>(2 * half_count + 1); }
    std::size_t bin(std::size_t column) const {
        const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(column) - half_count;
        const auto len = static_cast<std::ptrdiff_t>(fft_length);
        return static_cast<std::size_t>(((k % len) + len) % len);
    }
};

/// The O_tau fractionally shifted copies of s, one per sub-sample phase.
inline std::vector<ShiftedSignal> shifted_copies(std::span<const Complex> s, const AfConfig& cfg) {
    std::vector<ShiftedSignal> out;
    out.reserve(static_cast<std::size_t>(cfg.delay_oversampling));
    for (int d = 0; d < cfg.delay_oversampling; ++d) {
        const double delta = static_cast<double>(d) / cfg.delay_oversampling;
        out.push_back(fractional_shift(s, delta, cfg.half_width, cfg.window));
    }
    return out;
}

/// p[n] = s[n] conj(shifted(n - lag)).
inline CVec lag_product(std::span<const Complex> s, const ShiftedSignal& shifted, std::ptrdiff_t lag) {
    CVec p(s.size());
    for (std::size_t n = 0; n < s.size(); ++n) {
        p[n] = s[n] * std::conj(shifted.at(static_cast<std::ptrdiff_t>(n) - lag));
    }
    return p;
}

inline RVec delay_axis(const DelayGrid& grid, std::size_t n) {
    RVec axis(grid.size());
    const double step = 1.0 / (static_cast<double>(grid.oversampling) * static_cast<double>(n));
    for (std::size_t i = 0; i < axis.size(); ++i) axis[i] = static_cast<double>(grid.index_of(i)) * step;
    return axis;
}

inline RVec doppler_axis(const DopplerGrid& grid) {
    RVec axis(grid.size());
    for (std::size_t j = 0; j < axis.size(); ++j) {
        axis[j] = static_cast<double>(static_cast<std::ptrdiff_t>(j) - grid.half_count) /
                  static_cast<double>(grid.fft_length);
    }
    return axis;
}

inline void require_signal(std::span<const Complex> s) {
    if (s.size() < 2) throw InputError("ambiguity: signal must have at least 2 samples");
}

/// Sample whose axis coordinate is closest to zero.
inline std::size_t origin_index(const RVec& axis) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (std::abs(axis[i]) < std::abs(axis[best])) best = i;
    }
    return best;
}

/// Divides by values[reference]; returns the divisor.
inline double normalize_to(RVec& values, std::size_t reference) {
    const double ref = reference < values.size() ? values[reference] : 0.0;
    if (!(ref > 0.0)) throw InputError("ambiguity: all-zero signal has no origin value to normalize by");
    for (auto& v : values) v /= ref;
    return ref;
}

inline void normalize_to_origin(AfCut& cut) { normalize_to(cut.values, origin_index(cut.axis)); }

}  // namespace detail

/// Full interpolated surface. Doppler rows are evaluated with one zero-padded
/// FFT per delay; negative fractional delays use |A(-tau,-nu)| = |A(tau,nu)|.
inline AfSurface ambiguity_surface(std::span<const Complex> s, const AfConfig& cfg) {
    cfg.validate();
    detail::require_signal(s);
    const std::size_t n = s.size();
    const detail::DelayGrid tau_grid(n, cfg.delay_oversampling);
    const detail::DopplerGrid nu_grid(n, cfg.doppler_oversampling, cfg.nu_max);
    const auto shifted = detail::shifted_copies(s, cfg);

    AfSurface surface;
    surface.signal_length = n;
    surface.delay_axis = detail::delay_axis(tau_grid, n);
    surface.doppler_axis = detail::doppler_axis(nu_grid);
    const std::size_t cols = nu_grid.size();
    surface.mag.assign(tau_grid.size() * cols, 0.0);

    parallel_for(tau_grid.size(), cfg.threads, [&](std::size_t row) {
        const std::ptrdiff_t m = tau_grid.index_of(row);
        if (!tau_grid.computed_directly(m)) return;
        const CVec p = detail::lag_product(s, shifted[tau_grid.phase(m)], tau_grid.integer_lag(m));
        const CVec spectrum = fft::forward_padded(p, nu_grid.fft_length);
        double* out = surface.mag.data() + row * cols;
        for (std::size_t j = 0; j < cols; ++j) out[j] = std::abs(spectrum[nu_grid.bin(j)]);
    });
    const std::size_t last_row = tau_grid.size() - 1;
    for (std::size_t row = 0; row < tau_grid.size(); ++row) {
        if (tau_grid.computed_directly(tau_grid.index_of(row))) continue;
        const double* src = surface.mag.data() + (last_row - row) * cols;
        double* dst = surface.mag.data() + row * cols;
        for (std::size_t j = 0; j < cols; ++j) dst[j] = src[cols - 1 - j];
    }
    surface.origin_value_raw = detail::normalize_to(
        surface.mag, surface.zero_delay_index() * cols + surface.zero_doppler_index());
    return surface;
}

inline AfCut zero_doppler_cut(const AfSurface& surface) {
    AfCut cut{RVec(surface.delay_count()), surface.delay_axis, CutKind::zero_doppler};
    const std::size_t col = surface.zero_doppler_index();
    for (std::size_t i = 0; i < cut.values.size(); ++i) cut.values[i] = surface.at(i, col);
    detail::normalize_to_origin(cut);
    return cut;
}

inline AfCut zero_delay_cut(const AfSurface& surface) {
    const std::size_t row = surface.zero_delay_index();
    const auto begin = surface.mag.begin() + static_cast<std::ptrdiff_t>(row * surface.doppler_count());
    AfCut cut{RVec(begin, begin + static_cast<std::ptrdiff_t>(surface.doppler_count())),
              surface.doppler_axis, CutKind::zero_delay};
    detail::normalize_to_origin(cut);
    return cut;
}

/// Zero-Doppler cut computed without materializing the surface.
inline AfCut delay_cut(std::span<const Complex> s, const AfConfig& cfg) {
    cfg.validate();
    detail::require_signal(s);
    const std::size_t n = s.size();
    const detail::DelayGrid grid(n, cfg.delay_oversampling);
    const auto shifted = detail::shifted_copies(s, cfg);
    AfCut cut{RVec(grid.size(), 0.0), detail::delay_axis(grid, n), CutKind::zero_doppler};
    for (std::size_t row = 0; row < grid.size(); ++row) {
        const std::ptrdiff_t m = grid.index_of(row);
        if (!grid.computed_directly(m)) continue;
        const auto& y = shifted[grid.phase(m)];
        const std::ptrdiff_t lag = grid.integer_lag(m);
        Complex acc{};
        for (std::size_t i = 0; i < n; ++i) acc += s[i] * std::conj(y.at(static_cast<std::ptrdiff_t>(i) - lag));
        cut.values[row] = std::abs(acc);
    }
    const std::size_t last = grid.size() - 1;
    for (std::size_t row = 0; row < grid.size(); ++row) {
        if (!grid.computed_directly(grid.index_of(row))) cut.values[row] = cut.values[last - row];
    }
    detail::normalize_to_origin(cut);
    return cut;
}

/// Zero-delay cut |sum_n |s[n]|^2 e^{-j 2 pi nu n}| without the surface.
inline AfCut doppler_cut(std::span<const Complex> s, const AfConfig& cfg) {
    cfg.validate();
    detail::require_signal(s);
    const detail::DopplerGrid grid(s.size(), cfg.doppler_oversampling, cfg.nu_max);
    CVec power(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) power[i] = std::norm(s[i]);
    const CVec spectrum = fft::forward_padded(power, grid.fft_length);
    AfCut cut{RVec(grid.size()), detail::doppler_axis(grid), CutKind::zero_delay};
    for (std::size_t j = 0; j < grid.size(); ++j) cut.values[j] = std::abs(spectrum[grid.bin(j)]);
    detail::normalize_to_origin(cut);
    return cut;
}

/// tau_phys = tau_norm N T_s.
inline double delay_to_seconds(double tau_norm, std::size_t n, double sample_period) {
    if (!(sample_period > 0.0)) throw InputError("ts: sample period must be positive");
    return tau_norm * static_cast<double>(n) * sample_period;
}

/// nu_phys = nu_norm / T_s.
inline double doppler_to_hertz(double nu_norm, double sample_period) {
    if (!(sample_period > 0.0)) throw InputError("ts: sample period must be positive");
    return nu_norm / sample_period;
}

}  // namespace isac
