// config.hpp - campaign configuration from presets, JSON files and flags
//
// Every setting has one key, shared by the JSON config file and the command
// line (flag `--otau` <-> key "otau"). Precedence, lowest first:
// built-in defaults, preset, config file, flags.
#pragma once

#include "isac/experiments.hpp"
#include "isac/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace isac::config {

using nlohmann::json;

struct Overrides {
    std::optional<std::string> preset;
    std::optional<std::size_t> n;
    std::optional<std::size_t> k;
    std::optional<std::size_t> l;
    std::optional<std::vector<std::string>> waveforms;
    std::optional<double> c1;
    std::optional<double> c2;
    std::optional<std::uint64_t> perm_seed;
    std::optional<bool> randomize_permutation;
    std::optional<std::string> mode;
    std::optional<int> qam_order;
    std::optional<std::size_t> realizations;
    std::optional<std::uint64_t> seed;
    std::optional<int> otau;
    std::optional<int> onu;
    std::optional<int> lh;
    std::optional<std::string> window;
    std::optional<double> kaiser_beta;
    std::optional<double> numax;
    std::optional<double> ts;
    std::optional<std::string> averaging;
    std::optional<unsigned> threads;
    std::optional<bool> surface;
};

template <class O, class F>
void for_each_field(O& o, F&& f) {
    f("preset", o.preset);
    f("N", o.n);
    f("K", o.k);
    f("L", o.l);
    f("waveforms", o.waveforms);
    f("c1", o.c1);
    f("c2", o.c2);
    f("perm_seed", o.perm_seed);
    f("randomize_permutation", o.randomize_permutation);
    f("mode", o.mode);
    f("M", o.qam_order);
    f("R", o.realizations);
    f("seed", o.seed);
    f("otau", o.otau);
    f("onu", o.onu);
    f("lh", o.lh);
    f("window", o.window);
    f("kaiser_beta", o.kaiser_beta);
    f("numax", o.numax);
    f("ts", o.ts);
    f("averaging", o.averaging);
    f("threads", o.threads);
    f("surface", o.surface);
}

inline Overrides from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    Overrides o;
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for_each_field(o, [&](const char* name, auto& field) {
            if (key != name) return;
            known = true;
            if (value.is_null()) return;
            using T = typename std::decay_t<decltype(field)>::value_type;
            try {
                if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
                    if (value.is_number_integer() && value.get<long long>() < 0) {
                        throw ConfigError(std::string(name) + ": must be nonnegative");
                    }
                }
                field = value.get<T>();
            } catch (const json::exception&) {
                throw ConfigError(std::string(name) + ": wrong value type in config");
            }
        });
        if (!known) throw ConfigError(key + ": unknown configuration key");
    }
    return o;
}

inline json to_json(const Overrides& o) {
    json j = json::object();
    for_each_field(o, [&](const char* name, const auto& field) {
        if (field) j[name] = *field;
    });
    return j;
}

/// Fields set in `top` win over `base`.
inline Overrides merge(const Overrides& base, const Overrides& top) {
    json j = to_json(base);
    j.update(to_json(top));
    return from_json(j);
}

inline Overrides defaults() {
    Overrides o;
    o.n = 144;
    o.k = 12;
    o.l = 12;
    o.waveforms = std::vector<std::string>{"ofdm", "otfs", "afdm", "cpafdm"};
    o.perm_seed = 0;
    o.randomize_permutation = true;
    o.mode = "unimodular";
    o.qam_order = 16;
    o.realizations = kDeskRealizations;
    o.seed = 0;
    o.otau = 4;
    o.onu = 4;
    o.lh = 4;
    o.window = "hann";
    o.kaiser_beta = 6.0;
    o.numax = 0.5;
    o.averaging = "magnitude";
    o.threads = 0;
    o.surface = false;
    return o;
}

/// paper-table1: unit symbols; paper-random: 16-QAM, R = 10^4;
/// desk-random: 16-QAM, R = 100. All share N = 144, K = L = 12,
/// O_tau = O_nu = 4, L_h = 4.
inline Overrides preset(const std::string& name) {
    Overrides o;
    o.n = 144;
    o.k = 12;
    o.l = 12;
    o.otau = 4;
    o.onu = 4;
    o.lh = 4;
    if (name == "paper-table1") {
        o.mode = "unimodular";
    } else if (name == "paper-random" || name == "desk-random") {
        o.mode = "random";
        o.qam_order = 16;
        o.realizations = name == "paper-random" ? kFullRealizations : kDeskRealizations;
    } else {
        throw ConfigError("preset: unknown preset '" + name +
                          "' (expected paper-table1, paper-random or desk-random)");
    }
    return o;
}

inline WaveformSpec waveform_from_name(const std::string& name, const Overrides& o) {
    const std::size_t n = *o.n;
    const Afdm chirps{o.c1.value_or(default_afdm(n).c1), o.c2.value_or(default_afdm(n).c2)};
    if (name == "ofdm") return Ofdm{};
    if (name == "otfs") return Otfs{*o.k, *o.l};
    if (name == "afdm") return chirps;
    if (name == "cpafdm" || name == "cp-afdm") return CpAfdm{chirps.c1, chirps.c2, SeededPermutation{*o.perm_seed}};
    throw ConfigError("waveforms: unknown waveform '" + name + "' (expected ofdm, otfs, afdm or cpafdm)");
}

inline Window window_from_name(const std::string& name, double beta) {
    if (name == "hann") return Window::hann();
    if (name == "kaiser") return Window::kaiser(beta);
    if (name == "rectangular" || name == "rect") return Window::rectangular();
    throw ConfigError("window: unknown window '" + name + "' (expected hann, kaiser or rectangular)");
}

struct Resolved {
    CampaignConfig campaign;
    json echo;  // fully populated key tree; loading it as a config file reproduces the run
};

/// Builds and validates a campaign from fully merged settings.
inline Resolved build(const Overrides& merged_in) {
    Overrides o = merge(defaults(), merged_in);
    o.preset.reset();
    const std::size_t n = *o.n;
    if (n < 2) throw ConfigError("N: block length must be at least 2");
    if (!o.c1) o.c1 = default_afdm(n).c1;
    if (!o.c2) o.c2 = default_afdm(n).c2;

    CampaignConfig cfg;
    cfg.n = n;
    cfg.k = *o.k;
    cfg.l = *o.l;
    for (const auto& name : *o.waveforms) {
        cfg.waveforms.push_back(waveform_from_name(name, o));
        if (name == "otfs" && cfg.k * cfg.l != n) {
            throw ConfigError("K, L: K*L = " + std::to_string(cfg.k * cfg.l) + " does not equal N = " +
                              std::to_string(n));
        }
    }
    if (*o.mode == "unimodular") {
        cfg.mode = UnimodularCampaign{};
    } else if (*o.mode == "random") {
        if (!is_supported_qam_order(*o.qam_order)) {
            throw ConfigError("M: unsupported QAM order " + std::to_string(*o.qam_order) +
                              " (expected 4, 16, 64 or 256)");
        }
        cfg.mode = RandomCampaign{*o.qam_order, *o.realizations, *o.seed};
    } else {
        throw ConfigError("mode: expected 'random' or 'unimodular', got '" + *o.mode + "'");
    }
    cfg.randomize_permutation = *o.randomize_permutation;
    cfg.af.delay_oversampling = *o.otau;
    cfg.af.doppler_oversampling = *o.onu;
    cfg.af.half_width = *o.lh;
    cfg.af.window = window_from_name(*o.window, *o.kaiser_beta);
    cfg.af.nu_max = *o.numax;
    cfg.af.threads = *o.threads;
    if (*o.averaging == "magnitude") {
        cfg.averaging = AveragingOperand::magnitude;
    } else if (*o.averaging == "power") {
        cfg.averaging = AveragingOperand::power;
    } else {
        throw ConfigError("averaging: expected 'magnitude' or 'power', got '" + *o.averaging + "'");
    }
    cfg.sample_period = o.ts;
    cfg.retain_surface = *o.surface;
    cfg.validate();
    return {cfg, to_json(o)};
}

inline Overrides load_file(const std::filesystem::path& path) {
    const std::string text = io::read_text(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: '" + path.string() + "' is not valid JSON (" + e.what() + ")");
    }
    return from_json(j);
}

/// defaults <- preset <- file <- flags. The preset may be named in either
/// the file or the flags (flags win).
inline Resolved parse_config(const std::optional<std::filesystem::path>& file, const Overrides& flags) {
    const Overrides from_file = file ? load_file(*file) : Overrides{};
    Overrides merged;
    if (const auto name = flags.preset ? flags.preset : from_file.preset) merged = preset(*name);
    merged = merge(merged, from_file);
    merged = merge(merged, flags);
    return build(merged);
}

}  // namespace isac::config
