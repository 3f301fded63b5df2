#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaycci/analysis.hpp"
#include "relaycci/channel.hpp"
#include "relaycci/montecarlo.hpp"

namespace relaycci {

/// 10^(x_db/10).
double db_to_linear(double x_db);
double linear_to_db(double x);

// Declarative experiment description. Power-like quantities stay in dB here
// so that a parsed config serializes back to the same text values; they are
// converted to linear ratios when a SystemConfig is built.

struct InterfererDb {
    double shape = 1.0;
    double inr_db = 0.0;
    int count = 1;

    bool operator==(const InterfererDb&) const = default;
};

struct HopSpec {
    double alpha = 1.0;
    double snr_offset_db = 0.0;  ///< added to the sweep point
    std::vector<InterfererDb> interferers;

    bool operator==(const HopSpec&) const = default;
};

struct SeriesSpec {
    std::string label;
    std::vector<HopSpec> hops;

    bool operator==(const SeriesSpec&) const = default;
};

struct OutputSpec {
    std::string path;
    std::string format = "csv";

    bool operator==(const OutputSpec&) const = default;
};

struct Experiment {
    std::string name;
    std::string description;
    std::vector<SeriesSpec> series;
    std::vector<double> sweep_db;  ///< average desired-link SNR points
    double threshold_db = 0.0;
    double power_db = 0.0;
    double mod_const = 2.0;
    std::optional<McConfig> mc;
    OutputSpec output;

    bool operator==(const Experiment&) const = default;
};

/// Parses a JSON experiment document. Throws ConfigError naming the
/// offending field path (e.g. "series[1].hops[0].alpha").
Experiment parse_experiment(std::string_view json_text);
Experiment load_experiment(const std::filesystem::path& path);
/// Canonical JSON; symmetric shorthands appear expanded.
std::string serialize_experiment(const Experiment& experiment);

/// Hop parameters at a sweep point; multiple interferers are reduced to one
/// equivalent interferer (exact for i.i.d. groups, moment-matched otherwise).
HopParams resolve_hop(const HopSpec& hop, double snr_db);
SystemConfig series_config(const Experiment& experiment, const SeriesSpec& series,
                           double snr_db);

struct ReportRow {
    double snr_db = 0.0;
    double outage_low = 0.0;   ///< F_upper(th)
    double outage_high = 0.0;  ///< F_lower(th) = F_upper(K th)
    std::optional<double> outage_mc;
    std::optional<double> mc_stderr;
    double asymptote = 0.0;    ///< first-order expansion of outage_low
    std::optional<double> outage_low_worst_hop;
    std::optional<double> outage_high_worst_hop;
    bool flagged = false;      ///< MC estimate outside the 3-sigma bracket
};

struct SeriesReport {
    std::string label;
    bool symmetric = true;
    GainReport gains{};  ///< at 0 dB average SNR (G_c scales linearly with it)
    std::vector<ReportRow> rows;
};

struct OutageReport {
    std::string name;
    double threshold_db = 0.0;
    bool worst_hop_columns = false;
    std::vector<SeriesReport> series;

    std::size_t flagged_count() const;
    std::size_t row_count() const;
};

struct RunOptions {
    bool analysis_only = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> workers;
};

/// True when an MC outage lies outside [low - 3 sigma, high + 3 sigma], with
/// sigma the binomial sd at the nearest end of the bracket. Points whose
/// lower bound is under 100/trials are never flagged.
bool outside_bracket(const OutageBounds& bounds, const McEstimate& estimate);

/// Process exit code for a finished run: 0, or 2 if any point was flagged.
int exit_code(const OutageReport& report);

/// Experiment with CLI overrides applied (chunk clamped to trials).
Experiment apply_options(Experiment experiment, const RunOptions& options);

/// Closed-form bounds at every sweep point plus, when experiment.mc is set,
/// the Monte-Carlo outage of the exact end-to-end SIR. Point (s, i) of series
/// s uses mc.substream((s << 32) | i).
OutageReport run_experiment(const Experiment& experiment);

inline constexpr std::string_view kCsvHeader =
    "snr_db,outage_low,outage_high,outage_mc,mc_stderr,asymptote";

/// Series are written as consecutive row blocks in config order. Runs with a
/// non-symmetric series append outage_low_worst_hop,outage_high_worst_hop.
void write_csv(const OutageReport& report, std::ostream& out);
void emit_csv(const OutageReport& report, const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
};
CsvTable read_csv(std::istream& in);

std::string format_summary(const OutageReport& report);

}  // namespace relaycci
