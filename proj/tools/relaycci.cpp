// Command-line front end: outage sweeps, gain summaries, preset listing.
//
// Exit codes: 0 success, 1 config/IO error, 2 Monte-Carlo estimate outside
// the closed-form outage bracket at some sweep point.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaycci/analysis.hpp"
#include "relaycci/errors.hpp"
#include "relaycci/experiment.hpp"

namespace fs = std::filesystem;
using namespace relaycci;

namespace {

#ifndef RELAYCCI_PRESET_DIR
#define RELAYCCI_PRESET_DIR "presets"
#endif

// A config argument may be a file path or the name of a shipped preset.
fs::path resolve_config(const std::string& arg, const fs::path& preset_dir) {
    if (fs::exists(arg)) return arg;
    const fs::path preset = preset_dir / (arg + ".json");
    if (fs::exists(preset)) return preset;
    throw ConfigError(arg + ": no such config file or preset");
}

int cmd_run(const fs::path& config, const std::optional<std::string>& out_path,
            const RunOptions& options) {
    const Experiment ex = apply_options(load_experiment(config), options);
    const OutageReport report = run_experiment(ex);
    const fs::path out = out_path ? fs::path(*out_path) : fs::path(ex.output.path);
    emit_csv(report, out);
    std::cout << format_summary(report) << "  wrote " << report.row_count() << " rows to "
              << out.string() << '\n';
    return exit_code(report);
}

void print_gains(const std::string& label, const SystemConfig& cfg) {
    const SymmetricChain chain = worst_hop_chain(cfg);
    const GainReport g = gains(chain, cfg.mod_const);
    std::printf("%s\n", label.c_str());
    if (!cfg.is_symmetric()) {
        std::printf("  non-symmetric chain: gains of %zu copies of the worst hop\n",
                    chain.hops);
    }
    std::printf("  alpha = %g  beta = %g  K = %zu  a3 = %.12g\n", chain.hop.alpha,
                chain.hop.beta, chain.hops, chain.scale());
    std::printf("  G_d = %.12g\n", g.diversity);
    std::printf("  G_c = %.12g   (%.6g dB, at 0 dB average SNR)\n", g.coding,
                linear_to_db(g.coding));
    if (chain.hop.alpha == 1.0) {
        std::printf("  Rayleigh desired links: G_c = 2 l P snr / (K inr) = %.12g\n",
                    gains_rayleigh_desired(chain, cfg.mod_const).coding);
    }
    if (chain.hop.beta == 1.0) {
        std::printf("  Rayleigh interferers:   G_c = %.12g\n",
                    gains_rayleigh_interference(chain, cfg.mod_const).coding);
    }
}

int cmd_gains(const fs::path& config) {
    const Experiment ex = load_experiment(config);
    for (const auto& s : ex.series) print_gains(s.label, series_config(ex, s, 0.0));
    return 0;
}

int cmd_presets(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw ConfigError(dir.string() + ": preset directory not found");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        const Experiment ex = load_experiment(f);
        std::printf("%-8s %s\n", f.stem().string().c_str(), ex.description.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage bounds and gains of multi-hop AF relaying with Nakagami-m CCI"};
    app.require_subcommand(1);
    std::string preset_dir = RELAYCCI_PRESET_DIR;
    app.add_option("--preset-dir", preset_dir, "Directory holding preset configs");

    std::string run_config;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed, trials;
    std::optional<unsigned> workers;
    bool analysis_only = false;
    auto* run = app.add_subcommand("run", "Run an outage sweep and write CSV");
    run->add_option("config", run_config, "Config file or preset name")->required();
    run->add_option("--out", out_path, "CSV output path (default: config output.path)");
    run->add_option("--seed", seed, "Monte-Carlo seed override");
    run->add_option("--trials", trials, "Monte-Carlo trial count override");
    run->add_option("--workers", workers, "Worker threads (0 = all cores)");
    run->add_flag("--analysis-only", analysis_only, "Skip Monte-Carlo simulation");

    std::string gains_config;
    auto* gains_cmd = app.add_subcommand("gains", "Print diversity and coding gains");
    gains_cmd->add_option("config", gains_config, "Config file or preset name")->required();

    auto* presets = app.add_subcommand("presets", "Preset configs");
    auto* presets_list = presets->add_subcommand("list", "List shipped presets");
    presets->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            RunOptions opt{analysis_only, seed, trials, workers};
            return cmd_run(resolve_config(run_config, preset_dir), out_path, opt);
        }
        if (*gains_cmd) return cmd_gains(resolve_config(gains_config, preset_dir));
        if (*presets_list) return cmd_presets(preset_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
