// fft.hpp - thin FFTW wrapper with the unitary DFT convention
//
// Forward kernel e^{-j2*pi*k*n/N}. The unitary variants scale by 1/sqrt(N)
// in both directions so that F_N^H F_N = I.
#pragma once

#include "isac/types.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <utility>

namespace isac::fft {

namespace detail {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are created once per (size, direction) and shared afterwards.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        auto* in = fftw_alloc_complex(n);
        auto* out = fftw_alloc_complex(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        plans_.emplace(key, plan);
        return plan;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline void execute(std::span<const Complex> in, std::span<Complex> out, int sign) {
    fftw_plan plan = PlanCache::instance().get(in.size(), sign);
    // FFTW's out-of-place complex DFT does not modify its input.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
}

}  // namespace detail

/// Unnormalized forward DFT: X[k] = sum_n x[n] e^{-j2*pi*k*n/N}.
inline CVec forward(std::span<const Complex> x) {
    CVec out(x.size());
    if (x.empty()) return out;
    detail::execute(x, out, FFTW_FORWARD);
    return out;
}

/// Unnormalized forward DFT of x zero-padded to `length` samples.
inline CVec forward_padded(std::span<const Complex> x, std::size_t length) {
    if (length < x.size()) throw InputError("fft: padded length shorter than input");
    CVec padded(length);
    std::copy(x.begin(), x.end(), padded.begin());
    return forward(padded);
}

/// F_N x with the 1/sqrt(N) normalization.
inline CVec unitary_forward(std::span<const Complex> x) {
    CVec out(x.size());
    if (x.empty()) return out;
    detail::execute(x, out, FFTW_FORWARD);
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& v : out) v *= scale;
    return out;
}

/// F_N^H x with the 1/sqrt(N) normalization.
inline CVec unitary_inverse(std::span<const Complex> x) {
    CVec out(x.size());
    if (x.empty()) return out;
    detail::execute(x, out, FFTW_BACKWARD);
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace isac::fft
