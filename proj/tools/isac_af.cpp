// isac-af - ambiguity-function benchmark of OFDM / OTFS / AFDM / CP-AFDM
//
//   isac-af run     [flags]            campaign over the selected waveforms
//   isac-af af      [flags]            surface and cuts of one signal per waveform
//   isac-af metrics <cut.csv> [--out]  recompute metrics from an exported cut
//
// Exit codes: 0 success, 2 configuration/input error, 3 I/O error.
#include "isac/config.hpp"
#include "isac/io.hpp"
#include "isac/manifest.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using isac::io::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
    isac::config::Overrides flags;
    std::optional<std::string> config_file;
    std::string out_dir = "out";
};

void add_campaign_flags(CLI::App& cmd, CommonOptions& o) {
    auto& f = o.flags;
    cmd.add_option("--config", o.config_file, "JSON config file (same keys as the flags)");
    cmd.add_option("--preset", f.preset, "paper-table1 | paper-random | desk-random");
    cmd.add_option("--waveform", f.waveforms, "ofdm, otfs, afdm, cpafdm (repeatable; default all)");
    cmd.add_option("--N", f.n, "block length");
    cmd.add_option("--K", f.k, "OTFS delay bins");
    cmd.add_option("--L", f.l, "OTFS Doppler bins");
    cmd.add_option("--c1", f.c1, "AFDM/CP-AFDM chirp rate c1 (default 5/(2N))");
    cmd.add_option("--c2", f.c2, "AFDM/CP-AFDM chirp rate c2 (default 1/(2N))");
    cmd.add_option("--perm-seed", f.perm_seed, "CP-AFDM permutation seed");
    cmd.add_option("--randomize-perm", f.randomize_permutation,
                   "draw a fresh CP-AFDM permutation per realization (random mode)");
    cmd.add_option("--mode", f.mode, "random | unimodular");
    cmd.add_option("--M", f.qam_order, "QAM order for random mode");
    cmd.add_option("--R", f.realizations, "realizations for random mode");
    cmd.add_option("--seed", f.seed, "master seed for random mode");
    cmd.add_option("--otau", f.otau, "delay oversampling factor");
    cmd.add_option("--onu", f.onu, "Doppler oversampling factor");
    cmd.add_option("--lh", f.lh, "interpolation half-width in samples");
    cmd.add_option("--window", f.window, "hann | kaiser | rectangular");
    cmd.add_option("--kaiser-beta", f.kaiser_beta, "Kaiser window beta");
    cmd.add_option("--numax", f.numax, "Doppler half-range in cycles/sample");
    cmd.add_option("--ts", f.ts, "sample period in seconds (adds physical-unit columns)");
    cmd.add_option("--averaging", f.averaging, "magnitude | power");
    cmd.add_option("--threads", f.threads, "worker threads (0 = all cores)");
    cmd.add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
}

std::string slug(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (c != '-') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

fs::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw isac::IoError("cannot create output directory '" + dir + "': " + ec.message());
    return fs::path(dir);
}

json seeds_of(const isac::CampaignConfig& cfg, const json& echo) {
    json seeds{{"perm_seed", echo.at("perm_seed")}};
    if (const auto* r = std::get_if<isac::RandomCampaign>(&cfg.mode)) seeds["master_seed"] = r->master_seed;
    return seeds;
}

int cmd_run(const CommonOptions& o, bool export_surfaces, const std::string& layout) {
    auto flags = o.flags;
    if (export_surfaces) flags.surface = true;
    const auto resolved = isac::config::parse_config(o.config_file ? std::optional<fs::path>(*o.config_file)
                                                                   : std::nullopt,
                                                     flags);
    const auto result = isac::run_campaign(resolved.campaign);
    const fs::path dir = prepare_out_dir(o.out_dir);

    isac::io::RunManifest manifest("run", resolved.echo);
    manifest.set_seeds(seeds_of(resolved.campaign, resolved.echo));
    auto record = [&](const fs::path& p) { manifest.add_file(p, dir); };

    json provenance = json::array();
    for (const auto& w : result.waveforms) {
        const std::string base = slug(w.name);
        for (const auto& p : isac::io::export_cut(w.delay_cut, w.delay_metrics, dir / (base + "_delay_cut.csv"))) record(p);
        for (const auto& p : isac::io::export_cut(w.doppler_cut, w.doppler_metrics, dir / (base + "_doppler_cut.csv"))) record(p);
        if (w.surface) {
            const auto path = dir / (base + "_surface.csv");
            isac::io::export_surface(*w.surface, path,
                                     layout == "triplets" ? isac::io::SurfaceLayout::triplets
                                                          : isac::io::SurfaceLayout::matrix);
            record(path);
        }
        json entry{{"waveform", w.name}, {"averaging", isac::operand_name(resolved.campaign.averaging)}};
        if (w.permutation) entry["permutation"] = *w.permutation;
        provenance.push_back(std::move(entry));
    }
    const std::string table = isac::io::render_table(result);
    json table_doc = isac::io::table_json(result);
    table_doc["provenance"] = provenance;
    isac::io::write_text(dir / "table.txt", table);
    isac::io::write_text(dir / "table.json", isac::io::dump(table_doc));
    record(dir / "table.txt");
    record(dir / "table.json");
    manifest.write(dir / "manifest.json");
    std::cout << table;
    return 0;
}

int cmd_af(const CommonOptions& o, const std::string& layout) {
    const auto resolved = isac::config::parse_config(o.config_file ? std::optional<fs::path>(*o.config_file)
                                                                   : std::nullopt,
                                                     o.flags);
    const auto& cfg = resolved.campaign;
    const fs::path dir = prepare_out_dir(o.out_dir);
    isac::io::RunManifest manifest("af", resolved.echo);
    manifest.set_seeds(seeds_of(cfg, resolved.echo));

    for (const auto& spec : cfg.waveforms) {
        isac::SymbolMode symbols = isac::Unimodular{};
        if (const auto* r = std::get_if<isac::RandomCampaign>(&cfg.mode)) {
            symbols = isac::RandomQam{r->qam_order, r->master_seed, 0};
        }
        const auto x = isac::generate_symbols(symbols, cfg.n);
        const auto surface = isac::ambiguity_surface(isac::modulate(spec, x), cfg.af);
        const auto delay = isac::zero_doppler_cut(surface);
        const auto doppler = isac::zero_delay_cut(surface);
        const std::string base = slug(isac::waveform_name(spec));
        const auto surface_path = dir / (base + "_surface.csv");
        isac::io::export_surface(surface, surface_path,
                                 layout == "triplets" ? isac::io::SurfaceLayout::triplets
                                                      : isac::io::SurfaceLayout::matrix);
        manifest.add_file(surface_path, dir);
        for (const auto& p : isac::io::export_cut(delay, isac::analyze_cut(delay), dir / (base + "_delay_cut.csv")))
            manifest.add_file(p, dir);
        for (const auto& p : isac::io::export_cut(doppler, isac::analyze_cut(doppler), dir / (base + "_doppler_cut.csv")))
            manifest.add_file(p, dir);
        std::cout << isac::waveform_name(spec) << ": " << surface.delay_count() << " x " << surface.doppler_count()
                  << " surface, raw |A(0,0)| " << surface.origin_value_raw << "\n";
    }
    manifest.write(dir / "manifest.json");
    return 0;
}

int cmd_metrics(const std::string& path, const std::string& kind, const std::optional<std::string>& out) {
    const auto cut = isac::io::cut_from_csv(isac::io::read_text(path), kind == "zero_delay"
                                                                        ? isac::CutKind::zero_delay
                                                                        : isac::CutKind::zero_doppler);
    const std::string text = isac::io::dump(isac::io::metrics_to_json(isac::analyze_cut(cut)));
    if (out) {
        isac::io::write_text(*out, text);
    } else {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ambiguity-function benchmark for OFDM, OTFS, AFDM and CP-AFDM"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    bool run_surfaces = false;
    std::string run_layout = "matrix";
    auto* run = app.add_subcommand("run", "run a campaign and write cuts, metrics, table and manifest");
    add_campaign_flags(*run, run_opts);
    run->add_flag("--surface", run_surfaces, "also export full AF surfaces (unimodular or R = 1)");
    run->add_option("--surface-layout", run_layout, "matrix | triplets")
        ->check(CLI::IsMember({"matrix", "triplets"}));

    CommonOptions af_opts;
    std::string af_layout = "matrix";
    auto* af = app.add_subcommand("af", "compute the full surface and both cuts of a single signal");
    add_campaign_flags(*af, af_opts);
    af->add_option("--surface-layout", af_layout, "matrix | triplets")->check(CLI::IsMember({"matrix", "triplets"}));

    std::string cut_path;
    std::string cut_kind = "zero_doppler";
    std::optional<std::string> metrics_out;
    auto* metrics = app.add_subcommand("metrics", "recompute metrics from an exported cut CSV");
    metrics->add_option("cut", cut_path, "cut CSV file")->required();
    metrics->add_option("--kind", cut_kind, "zero_doppler | zero_delay")
        ->check(CLI::IsMember({"zero_doppler", "zero_delay"}));
    metrics->add_option("--out", metrics_out, "write metrics JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_opts, run_surfaces, run_layout);
        if (*af) return cmd_af(af_opts, af_layout);
        if (*metrics) return cmd_metrics(cut_path, cut_kind, metrics_out);
    } catch (const isac::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const isac::Error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
