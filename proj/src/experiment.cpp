#include "relaycci/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "relaycci/errors.hpp"
#include "relaycci/sir.hpp"

namespace relaycci {
namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultChunk = 65'536;

// JSON node plus its path, for error messages.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError((path_.empty() ? std::string("<root>") : path_) + ": " + msg);
    }

    const json& raw() const { return j_; }
    const std::string& path() const { return path_; }

    bool has(const char* key) const { return j_.contains(key); }

    Node at(const char* key) const {
        if (!j_.contains(key)) {
            Node(j_, join(key)).fail("missing required field");
        }
        return {j_.at(key), join(key)};
    }

    Node at(std::size_t i) const {
        return {j_.at(i), path_ + "[" + std::to_string(i) + "]"};
    }

    void require_object(std::initializer_list<const char*> allowed) const {
        if (!j_.is_object()) fail("expected an object");
        const std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& [key, _] : j_.items()) {
            if (!ok.count(key)) Node(j_, join(key.c_str())).fail("unknown field");
        }
    }

    std::size_t array_size() const {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }

    double number() const {
        if (!j_.is_number()) fail("expected a number");
        const double v = j_.get<double>();
        if (!std::isfinite(v)) fail("must be finite");
        return v;
    }

    double positive() const {
        const double v = number();
        if (!(v > 0.0)) fail("must be > 0");
        return v;
    }

    std::uint64_t count(std::uint64_t min) const {
        if (!j_.is_number_integer()) fail("expected an integer");
        if (j_.is_number_unsigned()) {
            const auto v = j_.get<std::uint64_t>();
            if (v < min) fail("must be >= " + std::to_string(min));
            return v;
        }
        const auto v = j_.get<std::int64_t>();
        if (v < static_cast<std::int64_t>(min)) fail("must be >= " + std::to_string(min));
        return static_cast<std::uint64_t>(v);
    }

    std::string string() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

private:
    std::string join(const char* key) const {
        return path_.empty() ? std::string(key) : path_ + "." + key;
    }

    const json& j_;
    std::string path_;
};

double opt_number(const Node& n, const char* key, double fallback) {
    return n.has(key) ? n.at(key).number() : fallback;
}

std::vector<InterfererDb> parse_interferers(const Node& hop) {
    if (hop.has("interferers")) {
        if (hop.has("beta") || hop.has("inr_db")) {
            hop.fail("give either beta/inr_db or interferers, not both");
        }
        const Node list = hop.at("interferers");
        const std::size_t n = list.array_size();
        if (n == 0) list.fail("must not be empty");
        std::vector<InterfererDb> out;
        for (std::size_t i = 0; i < n; ++i) {
            const Node e = list.at(i);
            e.require_object({"shape", "inr_db", "count"});
            InterfererDb d;
            d.shape = e.at("shape").positive();
            d.inr_db = e.at("inr_db").number();
            d.count = e.has("count") ? static_cast<int>(e.at("count").count(1)) : 1;
            out.push_back(d);
        }
        return out;
    }
    return {InterfererDb{hop.at("beta").positive(), hop.at("inr_db").number(), 1}};
}

HopSpec parse_hop(const Node& n, std::initializer_list<const char*> extra = {}) {
    std::vector<const char*> keys = {"alpha", "beta", "inr_db", "interferers",
                                     "snr_offset_db"};
    keys.insert(keys.end(), extra.begin(), extra.end());
    if (!n.raw().is_object()) n.fail("expected an object");
    for (const auto& [key, _] : n.raw().items()) {
        if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) ==
            keys.end()) {
            n.at(key.c_str()).fail("unknown field");
        }
    }
    HopSpec hop;
    hop.alpha = n.at("alpha").positive();
    hop.snr_offset_db = opt_number(n, "snr_offset_db", 0.0);
    hop.interferers = parse_interferers(n);
    return hop;
}

SeriesSpec parse_series(const Node& n, const std::string& fallback_label) {
    n.require_object({"label", "symmetric", "hops"});
    SeriesSpec s;
    s.label = n.has("label") ? n.at("label").string() : fallback_label;
    if (n.has("symmetric") == n.has("hops")) {
        n.fail("exactly one of 'symmetric' or 'hops' is required");
    }
    if (n.has("symmetric")) {
        const Node sym = n.at("symmetric");
        const HopSpec hop = parse_hop(sym, {"hops"});
        const std::uint64_t k = sym.at("hops").count(1);
        s.hops.assign(k, hop);
    } else {
        const Node hops = n.at("hops");
        const std::size_t k = hops.array_size();
        if (k == 0) hops.fail("must contain at least one hop");
        for (std::size_t i = 0; i < k; ++i) s.hops.push_back(parse_hop(hops.at(i)));
    }
    return s;
}

std::vector<double> parse_sweep(const Node& n) {
    std::vector<double> out;
    if (n.raw().is_object()) {
        n.require_object({"start", "stop", "step"});
        const double start = n.at("start").number();
        const double stop = n.at("stop").number();
        const double step = n.at("step").positive();
        if (stop < start) n.fail("stop must be >= start");
        const auto steps = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
        for (std::size_t i = 0; i <= steps; ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
    } else {
        const std::size_t k = n.array_size();
        for (std::size_t i = 0; i < k; ++i) out.push_back(n.at(i).number());
    }
    if (out.empty()) n.fail("sweep must not be empty");
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (!(out[i] > out[i - 1])) n.fail("sweep must be strictly increasing");
    }
    return out;
}

McConfig parse_mc(const Node& n) {
    n.require_object({"trials", "seed", "chunk", "workers"});
    McConfig mc;
    mc.trials = n.at("trials").count(1);
    mc.seed = n.has("seed") ? n.at("seed").count(0) : 1;
    mc.chunk = n.has("chunk") ? n.at("chunk").count(1) : std::min(kDefaultChunk, mc.trials);
    if (mc.chunk > mc.trials) n.at("chunk").fail("must not exceed trials");
    mc.workers = n.has("workers") ? static_cast<unsigned>(n.at("workers").count(0)) : 1;
    return mc;
}

json hop_to_json(const HopSpec& hop) {
    json j;
    j["alpha"] = hop.alpha;
    if (hop.interferers.size() == 1 && hop.interferers.front().count == 1) {
        j["beta"] = hop.interferers.front().shape;
        j["inr_db"] = hop.interferers.front().inr_db;
    } else {
        json list = json::array();
        for (const auto& i : hop.interferers) {
            list.push_back({{"shape", i.shape}, {"inr_db", i.inr_db}, {"count", i.count}});
        }
        j["interferers"] = list;
    }
    j["snr_offset_db"] = hop.snr_offset_db;
    return j;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_cell(std::ostream& out, const std::optional<double>& v) {
    out << ',';
    if (v) out << format_number(*v);
}

}  // namespace

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

Experiment parse_experiment(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
    }
    const Node root(doc, "");
    root.require_object({"name", "description", "series", "system", "sweep_db",
                         "threshold_db", "power_db", "mod_const", "monte_carlo",
                         "output"});
    Experiment ex;
    ex.name = root.has("name") ? root.at("name").string() : "experiment";
    if (root.has("description")) ex.description = root.at("description").string();

    if (root.has("series") == root.has("system")) {
        root.fail("exactly one of 'series' or 'system' is required");
    }
    if (root.has("system")) {
        ex.series.push_back(parse_series(root.at("system"), ex.name));
    } else {
        const Node list = root.at("series");
        const std::size_t n = list.array_size();
        if (n == 0) list.fail("must contain at least one series");
        for (std::size_t i = 0; i < n; ++i) {
            ex.series.push_back(parse_series(list.at(i), "series" + std::to_string(i)));
        }
    }
    ex.sweep_db = parse_sweep(root.at("sweep_db"));
    ex.threshold_db = opt_number(root, "threshold_db", 0.0);
    ex.power_db = opt_number(root, "power_db", 0.0);
    ex.mod_const = root.has("mod_const") ? root.at("mod_const").positive() : 2.0;
    if (root.has("monte_carlo")) ex.mc = parse_mc(root.at("monte_carlo"));
    if (root.has("output")) {
        const Node out = root.at("output");
        out.require_object({"path", "format"});
        if (out.has("path")) ex.output.path = out.at("path").string();
        if (out.has("format")) {
            ex.output.format = out.at("format").string();
            if (ex.output.format != "csv") out.at("format").fail("only 'csv' is supported");
        }
    }
    if (ex.output.path.empty()) ex.output.path = ex.name + ".csv";
    return ex;
}

Experiment load_experiment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_experiment(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string serialize_experiment(const Experiment& ex) {
    json j;
    j["name"] = ex.name;
    if (!ex.description.empty()) j["description"] = ex.description;
    json series = json::array();
    for (const auto& s : ex.series) {
        json hops = json::array();
        for (const auto& h : s.hops) hops.push_back(hop_to_json(h));
        series.push_back({{"label", s.label}, {"hops", hops}});
    }
    j["series"] = series;
    j["sweep_db"] = ex.sweep_db;
    j["threshold_db"] = ex.threshold_db;
    j["power_db"] = ex.power_db;
    j["mod_const"] = ex.mod_const;
    if (ex.mc) {
        j["monte_carlo"] = {{"trials", ex.mc->trials},
                            {"seed", ex.mc->seed},
                            {"chunk", ex.mc->chunk},
                            {"workers", ex.mc->workers}};
    }
    j["output"] = {{"path", ex.output.path}, {"format", ex.output.format}};
    return j.dump(2) + "\n";
}

HopParams resolve_hop(const HopSpec& hop, double snr_db) {
    std::vector<InterfererSpec> specs;
    for (const auto& i : hop.interferers) {
        specs.push_back({i.shape, db_to_linear(i.inr_db), i.count});
    }
    const EquivalentInterferer eq = specs.size() == 1
                                        ? aggregate_iid_interferers(specs.front())
                                        : aggregate_nonidentical_interferers(specs);
    HopParams out{hop.alpha, eq.shape, db_to_linear(snr_db + hop.snr_offset_db), eq.inr};
    out.validate();
    return out;
}

SystemConfig series_config(const Experiment& ex, const SeriesSpec& series,
                           double snr_db) {
    SystemConfig cfg;
    for (const auto& h : series.hops) cfg.hops.push_back(resolve_hop(h, snr_db));
    cfg.power = db_to_linear(ex.power_db);
    cfg.mod_const = ex.mod_const;
    cfg.validate();
    return cfg;
}

std::size_t OutageReport::flagged_count() const {
    std::size_t n = 0;
    for (const auto& s : series) {
        for (const auto& r : s.rows) n += r.flagged ? 1 : 0;
    }
    return n;
}

std::size_t OutageReport::row_count() const {
    std::size_t n = 0;
    for (const auto& s : series) n += s.rows.size();
    return n;
}

bool outside_bracket(const OutageBounds& b, const McEstimate& est) {
    const double n = static_cast<double>(est.trials);
    if (b.low < 100.0 / n) return false;
    const double q = std::clamp(est.mean, b.low, b.high);
    const double sigma = std::sqrt(q * (1.0 - q) / n);
    return est.mean < b.low - 3.0 * sigma || est.mean > b.high + 3.0 * sigma;
}

int exit_code(const OutageReport& report) { return report.flagged_count() > 0 ? 2 : 0; }

Experiment apply_options(Experiment ex, const RunOptions& opt) {
    if (opt.analysis_only) {
        ex.mc.reset();
        return ex;
    }
    if (!ex.mc && (opt.seed || opt.trials)) ex.mc = McConfig{};
    if (!ex.mc) return ex;
    if (opt.seed) ex.mc->seed = *opt.seed;
    if (opt.trials) {
        if (*opt.trials < 1) throw ConfigError("--trials: must be >= 1");
        ex.mc->trials = *opt.trials;
    }
    if (opt.workers) ex.mc->workers = *opt.workers;
    ex.mc->chunk = std::min(ex.mc->chunk, ex.mc->trials);
    return ex;
}

OutageReport run_experiment(const Experiment& ex) {
    OutageReport report;
    report.name = ex.name;
    report.threshold_db = ex.threshold_db;
    const OutageQuery query{db_to_linear(ex.threshold_db)};

    for (std::size_t s = 0; s < ex.series.size(); ++s) {
        const SeriesSpec& spec = ex.series[s];
        SeriesReport sr;
        sr.label = spec.label;
        const SystemConfig ref = series_config(ex, spec, 0.0);
        sr.symmetric = ref.is_symmetric();
        sr.gains = gains(worst_hop_chain(ref), ref.mod_const);
        if (!sr.symmetric) report.worst_hop_columns = true;

        for (std::size_t i = 0; i < ex.sweep_db.size(); ++i) {
            const SystemConfig cfg = series_config(ex, spec, ex.sweep_db[i]);
            ReportRow row;
            row.snr_db = ex.sweep_db[i];
            const OutageBounds b = outage_bounds(cfg, query);
            row.outage_low = b.low;
            row.outage_high = b.high;
            row.asymptote = upper_bound_cdf_asymptote(cfg, query.threshold);
            if (!sr.symmetric) {
                const OutageBounds w = outage_bounds_worst_hop(cfg, query);
                row.outage_low_worst_hop = w.low;
                row.outage_high_worst_hop = w.high;
            }
            if (ex.mc) {
                const McConfig mc = ex.mc->substream((std::uint64_t{s} << 32) | i);
                const McEstimate est = simulate_outage(cfg, query, mc);
                row.outage_mc = est.mean;
                row.mc_stderr = est.std_error;
                row.flagged = outside_bracket(b, est);
            }
            sr.rows.push_back(row);
        }
        report.series.push_back(std::move(sr));
    }
    return report;
}

void write_csv(const OutageReport& report, std::ostream& out) {
    out << kCsvHeader;
    if (report.worst_hop_columns) out << ",outage_low_worst_hop,outage_high_worst_hop";
    out << '\n';
    for (const auto& s : report.series) {
        for (const auto& r : s.rows) {
            out << format_number(r.snr_db) << ',' << format_number(r.outage_low) << ','
                << format_number(r.outage_high);
            write_cell(out, r.outage_mc);
            write_cell(out, r.mc_stderr);
            out << ',' << format_number(r.asymptote);
            if (report.worst_hop_columns) {
                // Symmetric series: the worst-hop form coincides with the exact one.
                write_cell(out, r.outage_low_worst_hop.value_or(r.outage_low));
                write_cell(out, r.outage_high_worst_hop.value_or(r.outage_high));
            }
            out << '\n';
        }
    }
}

void emit_csv(const OutageReport& report, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    write_csv(report, out);
    out.flush();
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(l);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!l.empty() && l.back() == ',') cells.emplace_back();
        return cells;
    };
    if (!std::getline(in, line)) return table;
    table.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::optional<double>> row;
        for (const auto& c : split(line)) {
            if (c.empty()) {
                row.emplace_back();
            } else {
                std::size_t used = 0;
                const double v = std::stod(c, &used);
                if (used != c.size()) throw std::runtime_error("bad CSV number: " + c);
                row.emplace_back(v);
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string format_summary(const OutageReport& report) {
    std::ostringstream out;
    out << "experiment " << report.name << ", threshold " << report.threshold_db << " dB\n";
    std::size_t first_row = 0;
    for (const auto& s : report.series) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "  %-24s rows %zu-%zu  G_d = %.6g  G_c(0 dB) = %.6g%s\n",
                      s.label.c_str(), first_row, first_row + s.rows.size() - 1,
                      s.gains.diversity, s.gains.coding,
                      s.symmetric ? "" : "  (worst-hop chain)");
        out << buf;
        first_row += s.rows.size();
    }
    if (const auto flagged = report.flagged_count()) {
        out << "  WARNING: " << flagged
            << " point(s) with Monte-Carlo outage outside the 3-sigma bound bracket\n";
    }
    return out.str();
}

}  // namespace relaycci
