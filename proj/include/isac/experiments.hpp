// experiments.hpp - random-QAM averaging and unimodular campaigns
#pragma once

#include "isac/ambiguity.hpp"
#include "isac/metrics.hpp"
#include "isac/parallel.hpp"
#include "isac/permutation.hpp"
#include "isac/symbols.hpp"
#include "isac/waveform.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace isac {

struct UnimodularCampaign {};

struct RandomCampaign {
    int qam_order = 16;               // M
    std::size_t realizations = 100;   // R
    std::uint64_t master_seed = 0;
};

using CampaignMode = std::variant<UnimodularCampaign, RandomCampaign>;

/// How per-realization cuts are combined. `magnitude` averages |A|, `power`
/// takes the root of the mean of |A|^2.
enum class AveragingOperand { magnitude, power };

inline std::string operand_name(AveragingOperand op) {
    return op == AveragingOperand::magnitude ? "magnitude" : "power";
}

inline constexpr std::size_t kFullRealizations = 10000;
inline constexpr std::size_t kDeskRealizations = 100;

struct CampaignConfig {
    std::size_t n = 144;
    std::size_t k = 12;
    std::size_t l = 12;
    std::vector<WaveformSpec> waveforms;
    CampaignMode mode = UnimodularCampaign{};
    AfConfig af{};
    bool randomize_permutation = true;  // CP-AFDM, random mode only
    AveragingOperand averaging = AveragingOperand::magnitude;
    std::optional<double> sample_period;  // T_s in seconds, reporting only
    bool retain_surface = false;

    bool is_random() const { return std::holds_alternative<RandomCampaign>(mode); }

    void validate() const {
        if (n < 2) throw ConfigError("N: block length must be at least 2");
        af.validate();
        for (const auto& w : waveforms) validate_waveform(w, n);
        if (const auto* r = std::get_if<RandomCampaign>(&mode)) {
            if (r->realizations < 1) throw ConfigError("R: number of realizations must be >= 1");
            (void)qam_constellation(r->qam_order);
            if (retain_surface && r->realizations > 1) {
                throw ConfigError("surface: full-surface retention is only available for single-realization runs "
                                  "(R = 1 or unimodular mode)");
            }
        }
        if (sample_period && !(*sample_period > 0.0)) throw ConfigError("ts: sample period must be positive");
    }

    /// The four waveforms at their default parameters for this geometry.
    static std::vector<WaveformSpec> standard_waveforms(std::size_t n, std::size_t k, std::size_t l) {
        return {Ofdm{}, Otfs{k, l}, default_afdm(n), default_cp_afdm(n)};
    }

    /// N = 144, K = L = 12, O_tau = O_nu = 4, L_h = 4, unit symbols.
    static CampaignConfig reference_unimodular() {
        CampaignConfig cfg;
        cfg.waveforms = standard_waveforms(cfg.n, cfg.k, cfg.l);
        return cfg;
    }

    /// Same geometry with random 16-QAM; R = 100 unless `full_scale`.
    static CampaignConfig reference_random(bool full_scale = false) {
        CampaignConfig cfg = reference_unimodular();
        cfg.mode = RandomCampaign{16, full_scale ? kFullRealizations : kDeskRealizations, 0};
        return cfg;
    }
};

struct WaveformResult {
    std::string name;
    WaveformSpec spec;
    AfCut delay_cut;
    AfCut doppler_cut;
    CutMetrics delay_metrics;
    CutMetrics doppler_metrics;
    std::optional<AfSurface> surface;
    std::optional<IndexArray> permutation;  // resolved CP-AFDM order, unimodular runs
};

struct CampaignResult {
    CampaignConfig config;
    std::vector<WaveformResult> waveforms;
};

/// Elementwise mean over cuts sharing one axis, re-normalized to 1 at the origin.
inline AfCut average_cuts(const std::vector<AfCut>& cuts,
                          AveragingOperand operand = AveragingOperand::magnitude) {
    if (cuts.empty()) throw InputError("average_cuts: no cuts given");
    const auto& ref = cuts.front();
    AfCut out{RVec(ref.values.size(), 0.0), ref.axis, ref.kind};
    for (const auto& c : cuts) {
        if (c.axis != ref.axis || c.values.size() != ref.values.size()) {
            throw InputError("average_cuts: cuts do not share an identical axis");
        }
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            out.values[i] += operand == AveragingOperand::magnitude ? c.values[i] : c.values[i] * c.values[i];
        }
    }
    const double count = static_cast<double>(cuts.size());
    for (auto& v : out.values) {
        v /= count;
        if (operand == AveragingOperand::power) v = std::sqrt(v);
    }
    detail::normalize_to_origin(out);
    return out;
}

namespace detail {

struct CutPair {
    AfCut delay;
    AfCut doppler;
};

inline WaveformSpec realization_spec(const WaveformSpec& spec, const CampaignConfig& cfg,
                                     const RandomCampaign& random, std::size_t r) {
    if (const auto* cp = std::get_if<CpAfdm>(&spec); cp && cfg.randomize_permutation) {
        CpAfdm fresh = *cp;
        fresh.permutation = ExplicitPermutation{seeded_permutation(random.master_seed, r, cfg.n)};
        return fresh;
    }
    return spec;
}

inline CutPair realization_cuts(const WaveformSpec& spec, const CampaignConfig& cfg,
                                const RandomCampaign& random, std::size_t r) {
    const SymbolBlock x = generate_symbols(RandomQam{random.qam_order, random.master_seed, r}, cfg.n);
    const CVec s = modulate(realization_spec(spec, cfg, random, r), x);
    return {delay_cut(s, cfg.af), doppler_cut(s, cfg.af)};
}

inline void accumulate(RVec& acc, const RVec& values, AveragingOperand op) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] += op == AveragingOperand::magnitude ? values[i] : values[i] * values[i];
    }
}

inline void finish_average(AfCut& cut, std::size_t count, AveragingOperand op) {
    for (auto& v : cut.values) {
        v /= static_cast<double>(count);
        if (op == AveragingOperand::power) v = std::sqrt(v);
    }
    normalize_to_origin(cut);
}

inline WaveformResult run_random(const WaveformSpec& spec, const CampaignConfig& cfg,
                                 const RandomCampaign& random) {
    // Realizations are computed in parallel blocks and summed in index order,
    // so the result does not depend on the worker count.
    constexpr std::size_t kBlock = 64;
    WaveformResult result{waveform_name(spec), spec, {}, {}, {}, {}, std::nullopt, std::nullopt};
    std::vector<CutPair> block;
    for (std::size_t start = 0; start < random.realizations; start += kBlock) {
        const std::size_t count = std::min(kBlock, random.realizations - start);
        block.assign(count, CutPair{});
        parallel_for(count, cfg.af.threads,
                     [&](std::size_t i) { block[i] = realization_cuts(spec, cfg, random, start + i); });
        if (start == 0) {
            result.delay_cut = AfCut{RVec(block[0].delay.values.size(), 0.0), block[0].delay.axis,
                                     CutKind::zero_doppler};
            result.doppler_cut = AfCut{RVec(block[0].doppler.values.size(), 0.0), block[0].doppler.axis,
                                       CutKind::zero_delay};
        }
        for (const auto& pair : block) {
            accumulate(result.delay_cut.values, pair.delay.values, cfg.averaging);
            accumulate(result.doppler_cut.values, pair.doppler.values, cfg.averaging);
        }
    }
    finish_average(result.delay_cut, random.realizations, cfg.averaging);
    finish_average(result.doppler_cut, random.realizations, cfg.averaging);
    if (cfg.retain_surface) {
        const SymbolBlock x = generate_symbols(RandomQam{random.qam_order, random.master_seed, 0}, cfg.n);
        result.surface = ambiguity_surface(modulate(realization_spec(spec, cfg, random, 0), x), cfg.af);
    }
    return result;
}

inline WaveformResult run_unimodular(const WaveformSpec& spec, const CampaignConfig& cfg) {
    WaveformResult result{waveform_name(spec), spec, {}, {}, {}, {}, std::nullopt, std::nullopt};
    if (const auto* cp = std::get_if<CpAfdm>(&spec)) {
        result.permutation = resolve_permutation(cp->permutation, cfg.n);
    }
    const SymbolBlock x = generate_symbols(Unimodular{}, cfg.n);
    const CVec s = modulate(spec, x);
    result.delay_cut = delay_cut(s, cfg.af);
    result.doppler_cut = doppler_cut(s, cfg.af);
    if (cfg.retain_surface) result.surface = ambiguity_surface(s, cfg.af);
    return result;
}

}  // namespace detail

inline CampaignResult run_campaign(const CampaignConfig& cfg) {
    cfg.validate();
    CampaignResult out{cfg, {}};
    out.waveforms.reserve(cfg.waveforms.size());
    for (const auto& spec : cfg.waveforms) {
        WaveformResult r = std::visit(
            [&](const auto& mode) {
                using T = std::decay_t<decltype(mode)>;
                if constexpr (std::is_same_v<T, RandomCampaign>) {
                    return detail::run_random(spec, cfg, mode);
                } else {
                    return detail::run_unimodular(spec, cfg);
                }
            },
            cfg.mode);
        r.delay_metrics = analyze_cut(r.delay_cut);
        r.doppler_metrics = analyze_cut(r.doppler_cut);
        out.waveforms.push_back(std::move(r));
    }
    return out;
}

}  // namespace isac
