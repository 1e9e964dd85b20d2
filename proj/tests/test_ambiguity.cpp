#include "isac/ambiguity.hpp"
#include "isac/waveform.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace isac;

namespace {

AfConfig config(int otau, int onu, int lh = 4) {
    AfConfig cfg;
    cfg.delay_oversampling = otau;
    cfg.doppler_oversampling = onu;
    cfg.half_width = lh;
    return cfg;
}

CVec rectangle(std::size_t n) { return CVec(n, 1.0 / std::sqrt(static_cast<double>(n))); }

}  // namespace

TEST(Grid, AxesAreSymmetricAndAnchored) {
    const auto surf = ambiguity_surface(CVec(144, 1.0), config(4, 4));
    EXPECT_EQ(surf.delay_count(), 1145u);
    EXPECT_EQ(surf.doppler_count(), 577u);
    EXPECT_EQ(surf.delay_axis[surf.zero_delay_index()], 0.0);
    EXPECT_EQ(surf.doppler_axis[surf.zero_doppler_index()], 0.0);
    EXPECT_NEAR(surf.delay_axis.back(), 143.0 / 144.0, 1e-15);
    EXPECT_NEAR(surf.delay_axis.front(), -143.0 / 144.0, 1e-15);
    EXPECT_NEAR(surf.doppler_axis.back(), 0.5, 1e-15);
    EXPECT_NEAR(surf.doppler_axis.front(), -0.5, 1e-15);
}

TEST(Surface, MatchesBruteForceAtUnitOversampling) {
    std::mt19937_64 gen(21);
    for (std::size_t n : {4u, 8u}) {
        for (int t = 0; t < 20; ++t) {
            const auto s = oracle::random_signal(n, gen);
            const auto surf = ambiguity_surface(s, config(1, 1));
            const double peak = surf.origin_value_raw;
            for (std::size_t i = 0; i < surf.delay_count(); ++i) {
                for (std::size_t j = 0; j < surf.doppler_count(); ++j) {
                    const double tau = surf.delay_axis[i] * static_cast<double>(n);
                    const double ref = std::abs(oracle::af(s, tau, surf.doppler_axis[j], 4)) / peak;
                    ASSERT_NEAR(surf.at(i, j), ref, 1e-9) << "N=" << n << " i=" << i << " j=" << j;
                }
            }
        }
    }
}

TEST(Surface, MatchesBruteForceAtFractionalNonNegativeDelays) {
    std::mt19937_64 gen(22);
    for (std::size_t n : {4u, 8u}) {
        for (int t = 0; t < 5; ++t) {
            const auto s = oracle::random_signal(n, gen);
            const auto surf = ambiguity_surface(s, config(4, 2));
            for (std::size_t i = surf.zero_delay_index(); i < surf.delay_count(); ++i) {
                for (std::size_t j = 0; j < surf.doppler_count(); ++j) {
                    const double tau = surf.delay_axis[i] * static_cast<double>(n);
                    const double ref = std::abs(oracle::af(s, tau, surf.doppler_axis[j], 4)) / surf.origin_value_raw;
                    ASSERT_NEAR(surf.at(i, j), ref, 1e-9) << "N=" << n << " tau=" << tau;
                }
            }
        }
    }
}

TEST(Surface, IntegerRowsMatchUninterpolatedCorrelation) {
    std::mt19937_64 gen(23);
    const auto s = oracle::random_signal(16, gen);
    const auto surf = ambiguity_surface(s, config(4, 4));
    for (std::size_t i = 0; i < surf.delay_count(); i += 4) {
        const long lag = std::lround(surf.delay_axis[i] * 16.0);
        for (std::size_t j = 0; j < surf.doppler_count(); ++j) {
            const double ref = std::abs(oracle::af_integer(s, lag, surf.doppler_axis[j])) / surf.origin_value_raw;
            EXPECT_NEAR(surf.at(i, j), ref, 1e-12);
        }
    }
}

TEST(Surface, MagnitudeSymmetry) {
    std::mt19937_64 gen(24);
    for (std::size_t n : {9u, 32u}) {
        const auto s = oracle::random_signal(n, gen);
        const auto surf = ambiguity_surface(s, config(4, 4));
        const std::size_t di = surf.delay_count() - 1, dj = surf.doppler_count() - 1;
        for (std::size_t i = 0; i < surf.delay_count(); ++i) {
            for (std::size_t j = 0; j < surf.doppler_count(); ++j) {
                ASSERT_NEAR(surf.at(i, j), surf.at(di - i, dj - j), 1e-6);
            }
        }
    }
}

TEST(Surface, PeakAtOriginEqualsEnergy) {
    std::mt19937_64 gen(25);
    const std::size_t n = 144;
    std::vector<CVec> signals{oracle::random_signal(n, gen), oracle::random_signal(n, gen)};
    for (const auto& spec : std::vector<WaveformSpec>{Ofdm{}, Otfs{12, 12}, default_afdm(n), default_cp_afdm(n)}) {
        signals.push_back(modulate(spec, generate_symbols(RandomQam{16, 5}, n)));
    }
    signals.push_back(modulate(Ofdm{}, CVec(n, 1.0)));
    for (const auto& s : signals) {
        const auto surf = ambiguity_surface(s, config(4, 4));
        // The origin attains the maximum (ties allowed, e.g. a flat Doppler row).
        EXPECT_LE(*std::max_element(surf.mag.begin(), surf.mag.end()), 1.0 + 1e-12);
        EXPECT_EQ(surf.at(surf.zero_delay_index(), surf.zero_doppler_index()), 1.0);
        EXPECT_NEAR(surf.origin_value_raw, energy(s), 1e-9 * energy(s));
    }
}

TEST(Surface, SlowlyVaryingSignalsPeakAtOrigin) {
    for (const auto& s : {rectangle(144), modulate(Otfs{12, 12}, CVec(144, 1.0))}) {
        const auto surf = ambiguity_surface(s, config(4, 4));
        EXPECT_LE(*std::max_element(surf.mag.begin(), surf.mag.end()), 1.0 + 1e-12);
        EXPECT_NEAR(surf.origin_value_raw, energy(s), 1e-9 * energy(s));
    }
}

TEST(Surface, DopplerRefinementOnlyInsertsPoints) {
    std::mt19937_64 gen(26);
    const auto s = oracle::random_signal(24, gen);
    const auto coarse = ambiguity_surface(s, config(2, 2));
    const auto fine = ambiguity_surface(s, config(2, 4));
    ASSERT_EQ(fine.doppler_count(), 2 * coarse.doppler_count() - 1);
    for (std::size_t i = 0; i < coarse.delay_count(); ++i) {
        for (std::size_t j = 0; j < coarse.doppler_count(); ++j) {
            EXPECT_EQ(fine.doppler_axis[2 * j], coarse.doppler_axis[j]);
            EXPECT_LT(std::abs(fine.at(i, 2 * j) - coarse.at(i, j)), 1e-12);
        }
    }
}

TEST(Surface, DeterministicAcrossThreadCounts) {
    std::mt19937_64 gen(27);
    const auto s = oracle::random_signal(144, gen);
    auto cfg = config(4, 4);
    cfg.threads = 1;
    const auto a = ambiguity_surface(s, cfg);
    for (unsigned t : {2u, 3u, 8u}) {
        cfg.threads = t;
        EXPECT_EQ(ambiguity_surface(s, cfg).mag, a.mag) << t << " threads";
    }
}

TEST(Cuts, RectangleTriangleAndDirichlet) {
    const std::size_t n = 144;
    const auto surf = ambiguity_surface(rectangle(n), config(4, 4));
    const auto dcut = zero_doppler_cut(surf);
    for (std::size_t i = 0; i < dcut.values.size(); i += 4) {
        const double lag = std::round(dcut.axis[i] * n);
        EXPECT_NEAR(dcut.values[i], (n - std::abs(lag)) / n, 1e-9);
    }
    const auto ncut = zero_delay_cut(surf);
    for (std::size_t j = 0; j < ncut.values.size(); ++j) {
        EXPECT_NEAR(ncut.values[j], oracle::dirichlet(ncut.axis[j], n), 1e-9);
    }
}

TEST(Cuts, UnimodularOfdmZeroDelayIsFlat) {
    const auto s = modulate(Ofdm{}, CVec(144, 1.0));
    const auto cut = zero_delay_cut(ambiguity_surface(s, config(4, 4)));
    for (double v : cut.values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Cuts, UnimodularOtfsDelaySupport) {
    const auto s = modulate(Otfs{12, 12}, CVec(144, 1.0));
    const auto cut = zero_doppler_cut(ambiguity_surface(s, config(4, 4)));
    for (std::size_t i = 0; i < cut.values.size(); i += 4) {
        const double lag = std::round(cut.axis[i] * 144.0);
        const double expected = std::abs(lag) < 12 ? (12.0 - std::abs(lag)) / 12.0 : 0.0;
        EXPECT_NEAR(cut.values[i], expected, 1e-9) << "lag " << lag;
    }
}

TEST(Cuts, DirectCutsEqualSurfaceCuts) {
    std::mt19937_64 gen(28);
    for (std::size_t n : {16u, 144u}) {
        const auto s = oracle::random_signal(n, gen);
        const auto cfg = config(4, 4);
        const auto surf = ambiguity_surface(s, cfg);
        const auto a = zero_doppler_cut(surf), b = delay_cut(s, cfg);
        const auto c = zero_delay_cut(surf), d = doppler_cut(s, cfg);
        EXPECT_EQ(a.axis, b.axis);
        EXPECT_EQ(c.axis, d.axis);
        for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
        for (std::size_t j = 0; j < c.values.size(); ++j) EXPECT_NEAR(c.values[j], d.values[j], 1e-12);
        EXPECT_EQ(a.kind, CutKind::zero_doppler);
        EXPECT_EQ(d.kind, CutKind::zero_delay);
    }
}

TEST(Cuts, NuMaxLimitsDopplerAxis) {
    auto cfg = config(1, 4);
    cfg.nu_max = 0.1;
    const auto cut = doppler_cut(CVec(32, 1.0), cfg);
    EXPECT_EQ(cut.values.size(), 2u * 12 + 1);
    EXPECT_LE(cut.axis.back(), 0.1);
}

TEST(Errors, AllZeroSignalAndBadConfig) {
    EXPECT_THROW(ambiguity_surface(CVec(8), config(4, 4)), InputError);
    EXPECT_THROW(delay_cut(CVec(8), config(4, 4)), InputError);
    EXPECT_THROW(ambiguity_surface(CVec(1, 1.0), config(4, 4)), InputError);
    EXPECT_THROW(ambiguity_surface(CVec(8, 1.0), config(0, 4)), ConfigError);
    EXPECT_THROW(ambiguity_surface(CVec(8, 1.0), config(4, 0)), ConfigError);
    EXPECT_THROW(ambiguity_surface(CVec(8, 1.0), config(4, 4, 0)), ConfigError);
}

TEST(Physical, Conversions) {
    EXPECT_NEAR(delay_to_seconds(1.0 / 144.0, 144, 1e-6), 1e-6, 1e-18);
    EXPECT_NEAR(doppler_to_hertz(0.5, 1e-6), 5e5, 1e-6);
    EXPECT_NEAR(delay_to_seconds(0.0058, 144, 10e-9), 8.352e-9, 1e-18);
    EXPECT_THROW(delay_to_seconds(0.1, 144, 0.0), InputError);
    EXPECT_THROW(doppler_to_hertz(0.1, -1.0), InputError);
}
