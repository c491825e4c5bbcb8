// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the simulator only through the C API.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tlri/tlri.h"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2, kPartialFailure = 3 };

int exit_for(tlri_status status) {
    switch (status) {
    case TLRI_OK:
        return kOk;
    case TLRI_ERR_CONFIG:
    case TLRI_ERR_PARAMETER:
        return kConfigError;
    default:
        return kRuntimeError;
    }
}

int report_error(tlri_status status, const char* context) {
    std::fprintf(stderr, "tlri-sim: %s: %s\n", context, tlri_last_error());
    return exit_for(status);
}

std::string default_out_dir() {
    if (const char* env = std::getenv("TLRI_OUT_DIR"); env && *env) return env;
    return "tlri-out";
}

struct MatrixOptions {
    std::string config = "paper_matrix";
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> n_traces;
};

// Owns a loaded matrix handle.
struct MatrixHandle {
    tlri_matrix* ptr = nullptr;
    ~MatrixHandle() { tlri_matrix_free(ptr); }
};

int load(const MatrixOptions& opts, MatrixHandle& handle) {
    if (tlri_status st = tlri_matrix_load(opts.config.c_str(), &handle.ptr); st != TLRI_OK)
        return report_error(st, "loading config");
    if (opts.seed) {
        if (tlri_status st = tlri_matrix_set_seed(handle.ptr, *opts.seed); st != TLRI_OK)
            return report_error(st, "applying --seed");
    }
    if (opts.n_traces) {
        if (tlri_status st = tlri_matrix_set_n_traces(handle.ptr, *opts.n_traces); st != TLRI_OK)
            return report_error(st, "applying --n-traces");
    }
    return kOk;
}

void add_matrix_options(CLI::App* cmd, MatrixOptions& opts) {
    cmd->add_option("--config", opts.config, "Matrix JSON file or bundled matrix name")
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Override the master seed");
    cmd->add_option("--n-traces", opts.n_traces, "Override the number of traces per scenario");
}

// Ranked table printed from results.csv, so console and file always agree.
int print_top(const std::string& results_path, std::size_t top) {
    tlri_results* results = nullptr;
    if (tlri_status st = tlri_results_load(results_path.c_str(), &results); st != TLRI_OK)
        return report_error(st, "reading results.csv");
    std::vector<tlri_result_row> rows;
    for (std::size_t i = 0; i < tlri_results_count(results); ++i) {
        tlri_result_row row{};
        tlri_results_row(results, i, &row);
        if (std::strcmp(row.leak, "none") != 0) rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.report.tlri > b.report.tlri;
    });
    rows.resize(std::min(rows.size(), top));
    std::printf("%-8s %-7s %-13s %6s %7s %7s %7s %9s\n", "scheme", "env", "leak", "alpha", "TLRI", "KS_D",
                "|delta|", "MI_bits");
    for (const auto& r : rows) {
        std::printf("%-8s %-7s %-13s %6g %7.3f %7.3f %7.3f %9.4f\n", r.scheme, r.env, r.leak, r.alpha,
                    r.report.tlri, r.report.ks_d, std::abs(r.report.cliff_delta), r.report.mi_bits);
    }
    tlri_results_free(results);
    return kOk;
}

int cmd_run(const MatrixOptions& mopts, const std::string& out_dir, int parallelism, bool emit_traces,
            bool force, std::size_t top) {
    MatrixHandle matrix;
    if (int rc = load(mopts, matrix); rc != kOk) return rc;

    tlri_run* run = nullptr;
    if (tlri_status st = tlri_run_matrix(matrix.ptr, parallelism, emit_traces ? 1 : 0, &run); st != TLRI_OK)
        return report_error(st, "running matrix");
    const std::size_t failures = tlri_run_failure_count(run);
    const std::size_t total = tlri_run_count(run);
    tlri_status st = tlri_run_write(run, out_dir.c_str(), force ? 1 : 0, emit_traces ? 1 : 0);
    for (std::size_t i = 0; i < failures; ++i)
        std::fprintf(stderr, "tlri-sim: scenario failed: %s\n", tlri_run_failure(run, i));
    tlri_run_free(run);
    if (st != TLRI_OK) return report_error(st, "writing results");

    std::fprintf(stderr, "tlri-sim: %zu scenario(s), %zu failed, results in %s\n", total, failures,
                 out_dir.c_str());
    if (int rc = print_top(out_dir + "/results.csv", top); rc != kOk) return rc;
    return failures > 0 ? kPartialFailure : kOk;
}

int cmd_sweep(const MatrixOptions& mopts, const std::string& out_dir, const std::string& selector,
              const std::string& grid, std::optional<std::uint64_t> shuffle_seed, bool force) {
    MatrixHandle matrix;
    if (int rc = load(mopts, matrix); rc != kOk) return rc;

    tlri_sweep_options opts{};
    opts.grid = grid.empty() ? nullptr : grid.c_str();
    opts.has_shuffle_seed = shuffle_seed ? 1 : 0;
    opts.shuffle_seed = shuffle_seed.value_or(0);
    tlri_sweep* sweep = nullptr;
    if (tlri_status st = tlri_sweep_run(matrix.ptr, selector.c_str(), &opts, &sweep); st != TLRI_OK)
        return report_error(st, "running sweep");
    tlri_status st = tlri_sweep_write(sweep, out_dir.c_str(), force ? 1 : 0);
    if (st == TLRI_OK) {
        std::printf("%10s %7s %7s %7s\n", "prefix_n", "TLRI", "KS_D", "SNR");
        for (std::size_t i = 0; i < tlri_sweep_point_count(sweep); ++i) {
            std::int64_t n = 0;
            tlri_report r{};
            if (tlri_sweep_point(sweep, i, &n, &r) == TLRI_OK)
                std::printf("%10" PRId64 " %7.3f %7.3f %7.3f\n", n, r.tlri, r.ks_d, r.snr);
            else
                std::printf("%10" PRId64 " skipped (%s)\n", n, tlri_last_error());
        }
        std::fprintf(stderr, "tlri-sim: wrote %s/sweep_%s.csv\n", out_dir.c_str(), tlri_sweep_scenario_id(sweep));
    }
    tlri_sweep_free(sweep);
    return st == TLRI_OK ? kOk : report_error(st, "writing sweep");
}

int cmd_validate(const MatrixOptions& mopts) {
    MatrixHandle matrix;
    if (int rc = load(mopts, matrix); rc != kOk) return rc;
    const std::size_t count = tlri_matrix_scenario_count(matrix.ptr);
    for (std::size_t i = 0; i < count; ++i) {
        tlri_scenario_info info{};
        tlri_matrix_scenario(matrix.ptr, i, &info);
        std::printf("%s scheme=%s env=%s leak=%s alpha=%g n=%" PRId64 " seed=%" PRIu64 "\n", info.id, info.scheme,
                    info.env, info.leak, info.alpha, info.n_traces, info.seed);
    }
    std::fprintf(stderr, "tlri-sim: %s is valid (%zu scenarios)\n", mopts.config.c_str(), count);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timing side-channel leakage simulator and TLRI risk scorer"};
    app.require_subcommand(0, 1);
    bool show_version = false;
    app.add_flag("--version", show_version, "Print tool and generator identifiers");

    MatrixOptions run_opts;
    std::string run_out = default_out_dir();
    int parallelism = 1;
    bool emit_traces = false;
    bool force = false;
    std::size_t top = 15;
    auto* run = app.add_subcommand("run", "Run the full scenario matrix");
    add_matrix_options(run, run_opts);
    run->add_option("--out", run_out, "Output directory (default: $TLRI_OUT_DIR or ./tlri-out)");
    run->add_option("--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--emit-traces", emit_traces, "Also write traces_<id>.csv per scenario");
    run->add_flag("--force", force, "Overwrite existing result files");
    run->add_option("--top", top, "Rows in the ranked console table")->capture_default_str();

    MatrixOptions sweep_opts;
    std::string sweep_out = default_out_dir();
    std::string selector;
    std::string grid;
    std::optional<std::uint64_t> shuffle_seed;
    bool sweep_force = false;
    auto* sweep = app.add_subcommand("sweep", "Prefix sample-size sweep of one scenario");
    add_matrix_options(sweep, sweep_opts);
    sweep->add_option("--out", sweep_out, "Output directory (default: $TLRI_OUT_DIR or ./tlri-out)");
    sweep->add_option("--scenario", selector, "Selector scheme/env/leak/alpha, '*' wildcards")->required();
    sweep->add_option("--grid", grid, "Grid spec lo:hi:logK, lo:hi:linK or a comma list");
    sweep->add_option("--shuffle-seed", shuffle_seed, "Seed of the prefix shuffle");
    sweep->add_flag("--force", sweep_force, "Overwrite an existing sweep file");

    MatrixOptions validate_opts;
    auto* validate = app.add_subcommand("validate", "Validate a config and list its scenarios and seeds");
    add_matrix_options(validate, validate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    if (show_version) {
        std::printf("tool=tlri-sim\nversion=%s\ngenerator=%s\n", tlri_version(), tlri_generator_name());
        return kOk;
    }
    if (*run) return cmd_run(run_opts, run_out, parallelism, emit_traces, force, top);
    if (*sweep) return cmd_sweep(sweep_opts, sweep_out, selector, grid, shuffle_seed, sweep_force);
    if (*validate) return cmd_validate(validate_opts);
    std::fputs(app.help().c_str(), stdout);
    return kOk;
}
