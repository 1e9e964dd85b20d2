// io.hpp - text serialization of cuts, surfaces, metrics and result tables
//
// Cut CSV:      header `axis,magnitude,magnitude_db`, one row per sample.
// Surface CSV:  matrix layout; row 0 is `tau/nu` followed by the Doppler
//               axis, each further row is a delay value followed by |A|.
//               The triplet layout is `tau,nu,magnitude`, delay-major.
// Metrics:      JSON object, see metrics_to_json().
//
// Numbers carry 12 significant digits: fixed notation with 12 decimals for
// zero and |v| >= 0.1, scientific otherwise. dB values are floored at -400.
#pragma once

#include "isac/ambiguity.hpp"
#include "isac/experiments.hpp"
#include "isac/metrics.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace isac::io {

using nlohmann::json;

inline constexpr double kDbFloor = -400.0;

inline std::string format_value(double v) {
    char buf[64];
    if (v == 0.0 || std::abs(v) >= 0.1) {
        std::snprintf(buf, sizeof buf, "%.12f", v == 0.0 ? 0.0 : v);
    } else {
        std::snprintf(buf, sizeof buf, "%.11e", v);
    }
    return buf;
}

inline double to_db(double magnitude) {
    if (!(magnitude > 0.0)) return kDbFloor;
    return std::max(kDbFloor, 20.0 * std::log10(magnitude));
}

/// 12 significant digits, always with a decimal point ("0.0", "-400.0").
inline std::string format_db(double db) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", db);
    std::string out = buf;
    if (out.find_first_of(".e") == std::string::npos) out += ".0";
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string cut_to_csv(const AfCut& cut) {
    std::string out = "axis,magnitude,magnitude_db\n";
    for (std::size_t i = 0; i < cut.values.size(); ++i) {
        out += format_value(cut.axis[i]);
        out += ',';
        out += format_value(cut.values[i]);
        out += ',';
        out += format_db(to_db(cut.values[i]));
        out += '\n';
    }
    return out;
}

/// Parses the cut CSV layout. The cut kind is not stored in the file and
/// is taken from `kind`.
inline AfCut cut_from_csv(const std::string& text, CutKind kind = CutKind::zero_doppler) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("axis,magnitude", 0) != 0) {
        throw InputError("cut csv: missing 'axis,magnitude,magnitude_db' header");
    }
    AfCut cut;
    cut.kind = kind;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string a, m;
        if (!std::getline(row, a, ',') || !std::getline(row, m, ',')) {
            throw InputError("cut csv: malformed row at line " + std::to_string(line_no));
        }
        try {
            cut.axis.push_back(std::stod(a));
            cut.values.push_back(std::stod(m));
        } catch (const std::exception&) {
            throw InputError("cut csv: non-numeric value at line " + std::to_string(line_no));
        }
    }
    if (cut.values.empty()) throw InputError("cut csv: no samples");
    return cut;
}

inline json optional_db(const std::optional<double>& v) {
    if (!v) return nullptr;
    return std::max(kDbFloor, *v);
}

inline json metrics_to_json(const CutMetrics& m) {
    return json{
        {"width_3db", m.width_3db},
        {"pslr_db", optional_db(m.pslr_db)},
        {"islr_db", optional_db(m.islr_db)},
        {"mainlobe_lo", m.mainlobe_lo},
        {"mainlobe_hi", m.mainlobe_hi},
        {"flags",
         {{"width_clamped", m.flags.width_clamped},
          {"no_sidelobes", m.flags.no_sidelobes},
          {"flat_cut", m.flags.flat_cut}}},
    };
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Writes `path` (CSV) and `<path without extension>.metrics.json`.
/// Returns the paths written.
inline std::vector<std::filesystem::path> export_cut(const AfCut& cut, const CutMetrics& metrics,
                                                     const std::filesystem::path& path) {
    auto metrics_path = path;
    metrics_path.replace_extension(".metrics.json");
    json doc = metrics_to_json(metrics);
    doc["cut"] = cut_kind_name(cut.kind);
    write_text(path, cut_to_csv(cut));
    write_text(metrics_path, dump(doc));
    return {path, metrics_path};
}

enum class SurfaceLayout { matrix, triplets };

inline std::string surface_to_csv(const AfSurface& surface, SurfaceLayout layout = SurfaceLayout::matrix) {
    std::ostringstream out;
    if (layout == SurfaceLayout::matrix) {
        out << "tau/nu";
        for (double nu : surface.doppler_axis) out << ',' << format_value(nu);
        out << '\n';
        for (std::size_t i = 0; i < surface.delay_count(); ++i) {
            out << format_value(surface.delay_axis[i]);
            for (std::size_t j = 0; j < surface.doppler_count(); ++j) out << ',' << format_value(surface.at(i, j));
            out << '\n';
        }
    } else {
        out << "tau,nu,magnitude\n";
        for (std::size_t i = 0; i < surface.delay_count(); ++i) {
            for (std::size_t j = 0; j < surface.doppler_count(); ++j) {
                out << format_value(surface.delay_axis[i]) << ',' << format_value(surface.doppler_axis[j]) << ','
                    << format_value(surface.at(i, j)) << '\n';
            }
        }
    }
    return out.str();
}

inline void export_surface(const AfSurface& surface, const std::filesystem::path& path,
                           SurfaceLayout layout = SurfaceLayout::matrix) {
    write_text(path, surface_to_csv(surface, layout));
}

// -- result table ------------------------------------------------------------

inline json table_json(const CampaignResult& result) {
    json rows = json::array();
    for (const auto& w : result.waveforms) {
        json row{
            {"waveform", w.name},
            {"delay_width_3db", w.delay_metrics.width_3db},
            {"doppler_width_3db", w.doppler_metrics.width_3db},
            {"pslr_tau_db", optional_db(w.delay_metrics.pslr_db)},
            {"islr_tau_db", optional_db(w.delay_metrics.islr_db)},
            {"pslr_nu_db", optional_db(w.doppler_metrics.pslr_db)},
            {"islr_nu_db", optional_db(w.doppler_metrics.islr_db)},
            {"delay", metrics_to_json(w.delay_metrics)},
            {"doppler", metrics_to_json(w.doppler_metrics)},
        };
        if (const auto& ts = result.config.sample_period) {
            row["delay_width_3db_seconds"] = delay_to_seconds(w.delay_metrics.width_3db, result.config.n, *ts);
            row["doppler_width_3db_hertz"] = doppler_to_hertz(w.doppler_metrics.width_3db, *ts);
        }
        rows.push_back(std::move(row));
    }
    return json{{"rows", rows}};
}

/// Aligned plain-text table, one row per waveform:
/// waveform, dtau_3db, dnu_3db, PSLR_tau, ISLR_tau, PSLR_nu, ISLR_nu
/// (plus physical widths when a sample period is configured).
inline std::string render_table(const CampaignResult& result) {
    const bool physical = result.config.sample_period.has_value();
    std::vector<std::string> header{"waveform", "dtau_3db", "dnu_3db", "pslr_tau_db",
                                    "islr_tau_db", "pslr_nu_db", "islr_nu_db"};
    if (physical) {
        header.emplace_back("dtau_3db_s");
        header.emplace_back("dnu_3db_hz");
    }
    auto fixed = [](double v, int decimals) {
        std::ostringstream ss;
        ss << std::fixed << std::setprecision(decimals) << v;
        return ss.str();
    };
    auto db = [&](const std::optional<double>& v) { return v ? fixed(std::max(kDbFloor, *v), 4) : std::string("n/a"); };
    auto sci = [](double v) {
        std::ostringstream ss;
        ss << std::scientific << std::setprecision(4) << v;
        return ss.str();
    };

    std::vector<std::vector<std::string>> rows{header};
    for (const auto& w : result.waveforms) {
        std::vector<std::string> row{w.name,
                                     fixed(w.delay_metrics.width_3db, 4),
                                     fixed(w.doppler_metrics.width_3db, 4),
                                     db(w.delay_metrics.pslr_db),
                                     db(w.delay_metrics.islr_db),
                                     db(w.doppler_metrics.pslr_db),
                                     db(w.doppler_metrics.islr_db)};
        if (physical) {
            const double ts = *result.config.sample_period;
            row.push_back(sci(delay_to_seconds(w.delay_metrics.width_3db, result.config.n, ts)));
            row.push_back(sci(doppler_to_hertz(w.doppler_metrics.width_3db, ts)));
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == 0) {
                out << std::left << std::setw(static_cast<int>(widths[c])) << row[c];
            } else {
                out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << row[c];
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace isac::io
