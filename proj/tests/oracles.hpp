// oracles.hpp - slow, independent reference computations for the tests
//
// Nothing here calls into the library's transforms: the DFT matrices, chirps,
// interpolation kernel and AF sums are written out from their definitions.
#pragma once

#include "isac/types.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using isac::Complex;
using isac::CVec;
using Matrix = std::vector<CVec>;  // row-major

constexpr double kPi = 3.14159265358979323846;

inline Matrix identity(std::size_t n) {
    Matrix m(n, CVec(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

/// [F_N]_{i,n} = e^{-j 2 pi i n / N} / sqrt(N)
inline Matrix dft_matrix(std::size_t n) {
    Matrix f(n, CVec(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            f[i][k] = std::exp(Complex(0.0, -2.0 * kPi * static_cast<double>(i * k) / static_cast<double>(n))) /
                      std::sqrt(static_cast<double>(n));
        }
    }
    return f;
}

inline Matrix hermitian(const Matrix& a) {
    Matrix h(a[0].size(), CVec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[0].size(); ++j) h[j][i] = std::conj(a[i][j]);
    }
    return h;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix c(a.size(), CVec(b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) {
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    }
    return c;
}

inline CVec apply(const Matrix& a, const CVec& x) {
    CVec y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    }
    return y;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
    Matrix k(ra * rb, CVec(ca * cb));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ca; ++j)
            for (std::size_t p = 0; p < rb; ++p)
                for (std::size_t q = 0; q < cb; ++q) k[i * rb + p][j * cb + q] = a[i][j] * b[p][q];
    return k;
}

inline Matrix diagonal(const CVec& d) {
    Matrix m(d.size(), CVec(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
    return m;
}

inline CVec chirp(double c, std::size_t n) {
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(Complex(0.0, -2.0 * kPi * c * static_cast<double>(i) * static_cast<double>(i)));
    }
    return out;
}

inline Matrix ofdm_matrix(std::size_t n) { return hermitian(dft_matrix(n)); }

inline Matrix otfs_matrix(std::size_t k, std::size_t l) { return kron(hermitian(dft_matrix(l)), identity(k)); }

/// Lambda_c1^H F_N^H Lambda_c2^H with an explicitly permuted c2 chirp.
inline Matrix afdm_matrix(std::size_t n, double c1, double c2, const std::vector<std::size_t>& perm = {}) {
    CVec l2 = chirp(c2, n);
    if (!perm.empty()) {
        CVec p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = l2[perm[i]];
        l2 = p;
    }
    return multiply(hermitian(diagonal(chirp(c1, n))), multiply(ofdm_matrix(n), hermitian(diagonal(l2))));
}

inline double hann(double x, double half_width) {
    if (std::abs(x) > half_width) return 0.0;
    return 0.5 * (1.0 + std::cos(kPi * x / half_width));
}

inline double windowed_sinc(double x, int half_width) {
    if (std::abs(x) > half_width) return 0.0;
    const double s = std::abs(x) < 1e-15 ? 1.0
                     : std::abs(x - std::round(x)) < 1e-15 ? 0.0
                                                           : std::sin(kPi * x) / (kPi * x);
    return hann(x, half_width) * s;
}

/// Sum of the kernel over the whole integer lattice seen from t.
inline double lattice_gain(double t, int half_width) {
    double g = 0.0;
    const long c = static_cast<long>(std::floor(t));
    for (long j = c - half_width - 1; j <= c + half_width + 1; ++j) g += windowed_sinc(t - static_cast<double>(j), half_width);
    return g;
}

/// s evaluated at continuous time t via the Hann-windowed sinc kernel,
/// scaled to unit lattice gain.
inline Complex interpolate(const CVec& s, double t, int half_width) {
    Complex acc{};
    for (std::size_t m = 0; m < s.size(); ++m) acc += s[m] * windowed_sinc(t - static_cast<double>(m), half_width);
    return acc / lattice_gain(t, half_width);
}

/// Direct triple loop: sum_n s[n] conj(s(n - tau)) e^{-j 2 pi nu n}.
inline Complex af(const CVec& s, double tau, double nu, int half_width) {
    Complex acc{};
    for (std::size_t n = 0; n < s.size(); ++n) {
        const double t = static_cast<double>(n) - tau;
        acc += s[n] * std::conj(interpolate(s, t, half_width)) *
               std::exp(Complex(0.0, -2.0 * kPi * nu * static_cast<double>(n)));
    }
    return acc;
}

/// Integer-lag AF with explicit zero padding, no interpolation at all.
inline Complex af_integer(const CVec& s, long lag, double nu) {
    Complex acc{};
    const long n = static_cast<long>(s.size());
    for (long i = 0; i < n; ++i) {
        const long j = i - lag;
        if (j < 0 || j >= n) continue;
        acc += s[static_cast<std::size_t>(i)] * std::conj(s[static_cast<std::size_t>(j)]) *
               std::exp(Complex(0.0, -2.0 * kPi * nu * static_cast<double>(i)));
    }
    return acc;
}

/// |sin(pi nu N) / (N sin(pi nu))|, the normalized Dirichlet kernel.
inline double dirichlet(double nu, std::size_t n) {
    const double den = static_cast<double>(n) * std::sin(kPi * nu);
    if (std::abs(den) < 1e-300) return 1.0;
    return std::abs(std::sin(kPi * nu * static_cast<double>(n)) / den);
}

/// Full width of the Dirichlet mainlobe at amplitude 1/sqrt(2), by bisection.
inline double dirichlet_half_power_width(std::size_t n) {
    double lo = 0.0, hi = 1.0 / static_cast<double>(n);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (dirichlet(mid, n) > 1.0 / std::sqrt(2.0) ? lo : hi) = mid;
    }
    return 2.0 * lo;
}

inline CVec random_signal(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    CVec s(n);
    for (auto& v : s) v = Complex(g(gen), g(gen));
    return s;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace oracle
