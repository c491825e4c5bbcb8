// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/results.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "tlri/rng.hpp"

namespace tlri {

namespace {

using ordered_json = nlohmann::ordered_json;

void append_metrics(std::string& line, const MetricReport& r) {
    for (double v : {r.mean_0, r.mean_1, r.std_0, r.std_1, r.pooled_std, r.welch_t, r.ks_d, r.cliff_delta,
                     r.mi_bits, r.overlap, r.snr, r.raw_score, r.tlri}) {
        line += format_double(v);
        line += ',';
    }
}

ordered_json number_or_null(double v) {
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory '" + dir.string() + "'");
}

void refuse_overwrite(const std::filesystem::path& path, bool force) {
    if (!force && std::filesystem::exists(path))
        throw IoError("'" + path.string() + "' exists; pass force to overwrite");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw IoError("malformed number '" + s + "'");
    return v;
}

template <typename Int>
Int parse_int(const std::string& s) {
    Int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw IoError("malformed integer '" + s + "'");
    return v;
}

}  // namespace

std::string results_csv(const MatrixRun& run) {
    std::string out = kResultsHeader;
    out += '\n';
    for (const auto& o : run.outcomes) {
        if (!o.report) continue;
        const Scenario& s = o.scenario;
        std::string line = s.scheme_id + "," + std::string(to_string(s.environment)) + "," +
                           std::string(to_string(s.leak_model)) + "," + format_double(s.alpha) + "," +
                           std::to_string(s.n_traces) + ",";
        append_metrics(line, *o.report);
        line += std::to_string(s.seed);
        out += line;
        out += '\n';
    }
    return out;
}

std::string results_json(const MatrixRun& run, const ScenarioMatrix& m, const RunMetadata& meta) {
    ordered_json doc;
    auto& md = doc["metadata"];
    md["tool"] = kToolName;
    md["version"] = kToolVersion;
    md["generator"] = std::string(kGeneratorName);
    md["seed_derivation"] =
        "scenario_seed = splitmix64(M ^ splitmix64(fnv1a64(\"scheme|env|leak|alpha\"))), "
        "M = master_seed after warmup discards; leak stream seed = splitmix64(scenario_seed ^ "
        "splitmix64(fnv1a64(\"leak\")))";
    md["config"] = meta.config;
    md["matrix_name"] = m.name;
    md["master_seed"] = m.master_seed;
    md["config_seed"] = meta.config_seed;
    md["seed_override"] = meta.seed_override ? ordered_json(*meta.seed_override) : ordered_json(nullptr);
    md["warmup"] = m.warmup;
    md["n_traces"] = m.n_traces;
    md["bins"] = m.bins;
    md["clipping"] = m.clipping;
    md["secret_probability"] = 0.5;
    md["alphas"] = m.alphas;
    ordered_json envs = ordered_json::array();
    for (auto e : m.environments) envs.push_back(std::string(to_string(e)));
    md["environments"] = envs;
    ordered_json leaks = ordered_json::array({"none"});
    for (auto l : m.leak_models) leaks.push_back(std::string(to_string(l)));
    md["leak_models"] = leaks;
    const auto& w = m.weights;
    md["weights"] = {{"w_snr", w.w_snr},   {"w_ks", w.w_ks},     {"w_cliff", w.w_cliff},
                     {"w_sep", w.w_sep},   {"w_mi", w.w_mi},     {"mi_cap", w.mi_cap},
                     {"logistic_shift", w.logistic_shift}};
    ordered_json schemes = ordered_json::array();
    for (const auto& s : m.schemes) {
        ordered_json params;
        for (const auto& [k, v] : describe_params(s.params)) params[k] = v;
        schemes.push_back({{"id", s.id}, {"large_baseline", s.large_baseline}, {"params", params}});
    }
    md["schemes"] = schemes;
    if (m.sweep) {
        md["sweep"] = {{"grid", m.sweep->grid},
                       {"shuffle_seed", m.sweep->shuffle_seed},
                       {"min_prefix", m.sweep->min_prefix}};
    }

    ordered_json rows = ordered_json::array();
    ordered_json failures = ordered_json::array();
    ordered_json warnings = ordered_json::array();
    for (const auto& o : run.outcomes) {
        for (const auto& wmsg : o.warnings) warnings.push_back(wmsg);
        const Scenario& s = o.scenario;
        if (!o.report) {
            failures.push_back({{"id", s.id()}, {"seed", s.seed}, {"error", o.error}});
            continue;
        }
        const MetricReport& r = *o.report;
        ordered_json row;
        row["id"] = s.id();
        row["scheme"] = s.scheme_id;
        row["env"] = std::string(to_string(s.environment));
        row["leak"] = std::string(to_string(s.leak_model));
        row["effective_leak"] = std::string(to_string(o.effective_leak));
        row["alpha"] = s.alpha;
        row["n"] = s.n_traces;
        row["seed"] = s.seed;
        row["n0"] = r.n_0;
        row["n1"] = r.n_1;
        row["mean0"] = r.mean_0;
        row["mean1"] = r.mean_1;
        row["std0"] = r.std_0;
        row["std1"] = r.std_1;
        row["pooled_std"] = r.pooled_std;
        row["welch_t"] = number_or_null(r.welch_t);
        row["welch_degenerate"] = r.welch_degenerate;
        row["ks_d"] = r.ks_d;
        row["cliff_delta"] = r.cliff_delta;
        row["mi_bits"] = r.mi_bits;
        row["overlap"] = r.overlap;
        row["snr"] = r.snr;
        row["snr_degenerate"] = r.snr_degenerate;
        row["raw"] = r.raw_score;
        row["tlri"] = r.tlri;
        rows.push_back(std::move(row));
    }
    doc["scenarios"] = rows;
    doc["failures"] = failures;
    doc["warnings"] = warnings;
    return doc.dump(2) + "\n";
}

std::string summary_csv(const MatrixRun& run) {
    struct Cell {
        std::optional<double> baseline;
        std::optional<double> worst;
        std::string worst_leak;
    };
    // Keyed by first appearance so row order follows the matrix.
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, Cell> cells;
    for (const auto& o : run.outcomes) {
        const auto key = std::pair{o.scenario.scheme_id, std::string(to_string(o.scenario.environment))};
        if (!cells.contains(key)) order.push_back(key);
        Cell& c = cells[key];
        if (!o.report) continue;
        if (o.scenario.leak_model == LeakModel::None) {
            c.baseline = o.report->tlri;
        } else if (!c.worst || o.report->tlri > *c.worst) {
            c.worst = o.report->tlri;
            c.worst_leak = std::string(to_string(o.scenario.leak_model));
        }
    }
    std::string out = kSummaryHeader;
    out += '\n';
    for (const auto& key : order) {
        const Cell& c = cells[key];
        out += key.first + "," + key.second + ",";
        out += c.baseline ? format_double(*c.baseline) : "";
        out += "," + c.worst_leak + ",";
        out += c.worst ? format_double(*c.worst) : "";
        out += ",";
        if (c.baseline && c.worst) out += format_double(*c.worst - *c.baseline);
        out += '\n';
    }
    return out;
}

std::string traces_csv(const TraceSet& traces) {
    std::string out = "secret,timing\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        out += traces.secrets[i] ? '1' : '0';
        out += ',';
        out += format_double(traces.timings[i]);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const SweepCurve& curve) {
    std::string out = kSweepHeader;
    out += '\n';
    for (const auto& p : curve.points) {
        std::string line = std::to_string(p.prefix_n) + ",";
        if (p.report) {
            append_metrics(line, *p.report);
            line += "ok";
        } else {
            line += std::string(13, ',');
            line += "skipped: " + p.skip_reason;
        }
        out += line;
        out += '\n';
    }
    return out;
}

std::vector<std::filesystem::path> write_results(const MatrixRun& run, const ScenarioMatrix& matrix,
                                                 const RunMetadata& meta, const std::filesystem::path& dir,
                                                 const WriteOptions& options) {
    if (run.outcomes.size() == run.failures())
        throw Error("no scenario produced a report; nothing to write");
    prepare_dir(dir);
    const auto results = dir / "results.csv";
    const auto json_path = dir / "results.json";
    const auto summary = dir / "summary.csv";
    for (const auto& p : {results, json_path, summary}) refuse_overwrite(p, options.force);

    std::vector<std::filesystem::path> written;
    write_file(results, results_csv(run));
    written.push_back(results);
    write_file(json_path, results_json(run, matrix, meta));
    written.push_back(json_path);
    write_file(summary, summary_csv(run));
    written.push_back(summary);
    if (options.emit_traces) {
        for (const auto& o : run.outcomes) {
            if (!o.traces) continue;
            const auto path = dir / ("traces_" + o.scenario.id() + ".csv");
            refuse_overwrite(path, options.force);
            write_file(path, traces_csv(*o.traces));
            written.push_back(path);
        }
    }
    return written;
}

std::filesystem::path write_sweep(const SweepCurve& curve, const Scenario& scenario,
                                  const std::filesystem::path& dir, bool force) {
    prepare_dir(dir);
    const auto path = dir / ("sweep_" + scenario.id() + ".csv");
    refuse_overwrite(path, force);
    write_file(path, sweep_csv(curve));
    return path;
}

std::vector<ResultRow> parse_results_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader)
        throw IoError("results.csv: unexpected header");
    std::vector<ResultRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 19)
            throw IoError("results.csv line " + std::to_string(line_no) + ": expected 19 fields, got " +
                          std::to_string(f.size()));
        try {
            ResultRow r;
            r.scheme = f[0];
            r.env = f[1];
            r.leak = f[2];
            r.alpha = parse_double(f[3]);
            r.n = parse_int<std::int64_t>(f[4]);
            auto& m = r.report;
            double* targets[] = {&m.mean_0, &m.mean_1, &m.std_0,   &m.std_1, &m.pooled_std,
                                 &m.welch_t, &m.ks_d,  &m.cliff_delta, &m.mi_bits, &m.overlap,
                                 &m.snr,    &m.raw_score, &m.tlri};
            for (std::size_t k = 0; k < 13; ++k) *targets[k] = parse_double(f[5 + k]);
            r.seed = parse_int<std::uint64_t>(f[18]);
            rows.push_back(std::move(r));
        } catch (const IoError& e) {
            throw IoError("results.csv line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_results_csv(buf.str());
}

}  // namespace tlri
