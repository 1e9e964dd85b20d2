// waveform.hpp - the four unitary multicarrier modulators
//
//   OFDM     s = F_N^H x
//   OTFS     s = (F_L^H (x) I_K) x            (rectangular pulses, N = K*L)
//   AFDM     s = L_c1^H F_N^H L_c2^H x        (L_c = diag(e^{-j2*pi*c*n^2}))
//   CP-AFDM  as AFDM with the c2 chirp sequence permuted before use
//
// All transforms use FFT fast paths; the dense matrices are only built in
// the test oracles.
#pragma once

#include "isac/fft.hpp"
#include "isac/permutation.hpp"
#include "isac/symbols.hpp"
#include "isac/types.hpp"

#include <cmath>
#include <span>
#include <string>
#include <variant>

namespace isac {

struct Ofdm {};

struct Otfs {
    std::size_t delay_bins = 12;    // K
    std::size_t doppler_bins = 12;  // L
};

struct Afdm {
    double c1 = 0.0;
    double c2 = 0.0;
};

struct CpAfdm {
    double c1 = 0.0;
    double c2 = 0.0;
    PermutationSpec permutation = SeededPermutation{0};
};

using WaveformSpec = std::variant<Ofdm, Otfs, Afdm, CpAfdm>;

/// Standard full-band choice c1 = 5/(2N), c2 = 1/(2N).
inline Afdm default_afdm(std::size_t n) {
    const double two_n = 2.0 * static_cast<double>(n);
    return Afdm{5.0 / two_n, 1.0 / two_n};
}

inline CpAfdm default_cp_afdm(std::size_t n, PermutationSpec perm = SeededPermutation{0}) {
    const auto a = default_afdm(n);
    return CpAfdm{a.c1, a.c2, std::move(perm)};
}

inline std::string waveform_name(const WaveformSpec& spec) {
    static constexpr const char* names[] = {"OFDM", "OTFS", "AFDM", "CP-AFDM"};
    return names[spec.index()];
}

/// Configuration-time check of a spec against a block length.
inline void validate_waveform(const WaveformSpec& spec, std::size_t n) {
    if (const auto* otfs = std::get_if<Otfs>(&spec)) {
        if (otfs->delay_bins == 0 || otfs->doppler_bins == 0 ||
            otfs->delay_bins * otfs->doppler_bins != n) {
            throw ConfigError("K, L: OTFS grid K*L = " +
                              std::to_string(otfs->delay_bins * otfs->doppler_bins) +
                              " does not equal N = " + std::to_string(n));
        }
    }
    if (const auto* cp = std::get_if<CpAfdm>(&spec)) {
        (void)resolve_permutation(cp->permutation, n);
    }
}

/// lambda_c[n] = exp(-j 2 pi c n^2).
inline CVec chirp_sequence(double c, std::size_t n) {
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sq = static_cast<double>(i) * static_cast<double>(i);
        double cycles = c * sq;
        cycles -= std::floor(cycles);
        out[i] = std::polar(1.0, -2.0 * kPi * cycles);
    }
    return out;
}

namespace detail {

inline CVec inverse_daft(std::span<const Complex> x, double c1, const CVec& lambda2) {
    const std::size_t n = x.size();
    CVec pre(n);
    for (std::size_t i = 0; i < n; ++i) pre[i] = std::conj(lambda2[i]) * x[i];
    CVec s = fft::unitary_inverse(pre);
    const CVec lambda1 = chirp_sequence(c1, n);
    for (std::size_t i = 0; i < n; ++i) s[i] *= std::conj(lambda1[i]);
    return s;
}

inline CVec otfs_modulate(std::span<const Complex> x, std::size_t k_bins, std::size_t l_bins) {
    // x is vec(X) for a K x L grid: x[l*K + k] = X[k, l].
    CVec s(x.size());
    CVec column(l_bins);
    for (std::size_t k = 0; k < k_bins; ++k) {
        for (std::size_t l = 0; l < l_bins; ++l) column[l] = x[l * k_bins + k];
        const CVec t = fft::unitary_inverse(column);
        for (std::size_t l = 0; l < l_bins; ++l) s[l * k_bins + k] = t[l];
    }
    return s;
}

}  // namespace detail

/// s = M x for the modulator described by `spec`. CP-AFDM permutations are
/// resolved against N = x.size().
inline CVec modulate(const WaveformSpec& spec, std::span<const Complex> x) {
    const std::size_t n = x.size();
    if (n == 0) throw InputError("modulate: empty symbol block");
    return std::visit(
        [&](const auto& w) -> CVec {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, Ofdm>) {
                return fft::unitary_inverse(x);
            } else if constexpr (std::is_same_v<T, Otfs>) {
                if (w.delay_bins * w.doppler_bins != n) {
                    throw InputError("modulate: OTFS grid " + std::to_string(w.delay_bins) + "x" +
                                     std::to_string(w.doppler_bins) +
                                     " does not match block length " + std::to_string(n));
                }
                return detail::otfs_modulate(x, w.delay_bins, w.doppler_bins);
            } else if constexpr (std::is_same_v<T, Afdm>) {
                return detail::inverse_daft(x, w.c1, chirp_sequence(w.c2, n));
            } else {
                const IndexArray perm = resolve_permutation(w.permutation, n);
                const CVec lambda2 = chirp_sequence(w.c2, n);
                CVec permuted(n);
                for (std::size_t i = 0; i < n; ++i) permuted[i] = lambda2[perm[i]];
                return detail::inverse_daft(x, w.c1, permuted);
            }
        },
        spec);
}

inline CVec modulate(const WaveformSpec& spec, const SymbolBlock& block) {
    return modulate(spec, std::span<const Complex>(block.values));
}

inline double energy(std::span<const Complex> s) {
    double e = 0.0;
    for (const auto& v : s) e += std::norm(v);
    return e;
}

}  // namespace isac
