// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/tlri.h"

#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "tlri/config.hpp"
#include "tlri/pipeline.hpp"
#include "tlri/results.hpp"
#include "tlri/rng.hpp"
#include "tlri/scoring.hpp"
#include "tlri/sweep.hpp"

namespace {

thread_local std::string g_last_error;

struct ScenarioStrings {
    std::string id;
    std::string scheme;
    std::string env;
    std::string leak;
};

ScenarioStrings strings_of(const tlri::Scenario& s) {
    return {s.id(), s.scheme_id, std::string(tlri::to_string(s.environment)),
            std::string(tlri::to_string(s.leak_model))};
}

void fill_info(const tlri::Scenario& s, const ScenarioStrings& str, tlri_scenario_info* out) {
    out->id = str.id.c_str();
    out->scheme = str.scheme.c_str();
    out->env = str.env.c_str();
    out->leak = str.leak.c_str();
    out->alpha = s.alpha;
    out->n_traces = s.n_traces;
    out->seed = s.seed;
}

void fill_report(const tlri::MetricReport& r, tlri_report* out) {
    out->mean_0 = r.mean_0;
    out->mean_1 = r.mean_1;
    out->std_0 = r.std_0;
    out->std_1 = r.std_1;
    out->pooled_std = r.pooled_std;
    out->welch_t = r.welch_t;
    out->ks_d = r.ks_d;
    out->cliff_delta = r.cliff_delta;
    out->mi_bits = r.mi_bits;
    out->overlap = r.overlap;
    out->snr = r.snr;
    out->raw_score = r.raw_score;
    out->tlri = r.tlri;
    out->n_0 = r.n_0;
    out->n_1 = r.n_1;
    out->welch_degenerate = r.welch_degenerate ? 1 : 0;
    out->snr_degenerate = r.snr_degenerate ? 1 : 0;
}

tlri::TlriWeights to_weights(const tlri_weights& w) {
    return {w.w_snr, w.w_ks, w.w_cliff, w.w_sep, w.w_mi, w.mi_cap, w.logistic_shift};
}

tlri_status fail(tlri_status code, std::string message) {
    g_last_error = std::move(message);
    return code;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
tlri_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const tlri::ConfigError& e) {
        return fail(TLRI_ERR_CONFIG, e.what());
    } catch (const tlri::ParameterError& e) {
        return fail(TLRI_ERR_PARAMETER, e.what());
    } catch (const tlri::InsufficientDataError& e) {
        return fail(TLRI_ERR_INSUFFICIENT_DATA, e.what());
    } catch (const tlri::IoError& e) {
        return fail(TLRI_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(TLRI_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(TLRI_ERR_RUNTIME, e.what());
    }
}

}  // namespace

struct tlri_matrix {
    tlri::ScenarioMatrix matrix;
    tlri::RunMetadata meta;
    std::vector<tlri::Scenario> scenarios;
    std::vector<ScenarioStrings> strings;

    void refresh() {
        scenarios = tlri::expand_scenarios(matrix);
        strings.clear();
        for (const auto& s : scenarios) strings.push_back(strings_of(s));
    }
};

struct tlri_run {
    tlri::ScenarioMatrix matrix;
    tlri::RunMetadata meta;
    tlri::MatrixRun run;
    std::vector<ScenarioStrings> strings;
    std::vector<std::string> failures;
};

struct tlri_results {
    std::vector<tlri::ResultRow> rows;
};

struct tlri_sweep {
    tlri::Scenario scenario;
    std::string id;
    tlri::SweepCurve curve;
};

extern "C" {

const char* tlri_version(void) { return tlri::kToolVersion; }

const char* tlri_generator_name(void) { return tlri::kGeneratorName.data(); }

const char* tlri_last_error(void) { return g_last_error.c_str(); }

tlri_weights tlri_default_weights(void) {
    const tlri::TlriWeights w;
    return {w.w_snr, w.w_ks, w.w_cliff, w.w_sep, w.w_mi, w.mi_cap, w.logistic_shift};
}

tlri_status tlri_evaluate(const uint8_t* secrets, const double* timings, size_t n, int bins,
                          const tlri_weights* weights, tlri_report* out) {
    if ((n > 0 && (!secrets || !timings)) || !out)
        return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_evaluate: null pointer");
    return guarded([&] {
        tlri::TraceSet traces;
        traces.secrets.assign(secrets, secrets + n);
        traces.timings.assign(timings, timings + n);
        for (auto& s : traces.secrets)
            if (s > 1) throw tlri::ParameterError("tlri_evaluate: secret labels must be 0 or 1");
        const tlri::TlriWeights w = weights ? to_weights(*weights) : tlri::TlriWeights{};
        fill_report(tlri::evaluate(traces, bins, w), out);
        return TLRI_OK;
    });
}

tlri_status tlri_matrix_load(const char* path_or_name, tlri_matrix** out) {
    if (!path_or_name || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_matrix_load: null pointer");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<tlri_matrix>();
        handle->matrix = tlri::load_matrix(path_or_name);
        handle->meta.config = path_or_name;
        handle->meta.config_seed = handle->matrix.master_seed;
        handle->refresh();
        *out = handle.release();
        return TLRI_OK;
    });
}

void tlri_matrix_free(tlri_matrix* matrix) { delete matrix; }

tlri_status tlri_matrix_set_seed(tlri_matrix* matrix, uint64_t master_seed) {
    if (!matrix) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_matrix_set_seed: null matrix");
    return guarded([&] {
        matrix->matrix.master_seed = master_seed;
        matrix->meta.seed_override = master_seed;
        matrix->refresh();
        return TLRI_OK;
    });
}

tlri_status tlri_matrix_set_n_traces(tlri_matrix* matrix, int64_t n_traces) {
    if (!matrix) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_matrix_set_n_traces: null matrix");
    if (n_traces < 2) return fail(TLRI_ERR_CONFIG, "n_traces must be >= 2 (got " + std::to_string(n_traces) + ")");
    return guarded([&] {
        matrix->matrix.n_traces = n_traces;
        matrix->refresh();
        return TLRI_OK;
    });
}

size_t tlri_matrix_scenario_count(const tlri_matrix* matrix) {
    return matrix ? matrix->scenarios.size() : 0;
}

tlri_status tlri_matrix_scenario(const tlri_matrix* matrix, size_t index, tlri_scenario_info* out) {
    if (!matrix || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_matrix_scenario: null pointer");
    if (index >= matrix->scenarios.size()) return fail(TLRI_ERR_INVALID_ARGUMENT, "scenario index out of range");
    fill_info(matrix->scenarios[index], matrix->strings[index], out);
    return TLRI_OK;
}

tlri_status tlri_run_matrix(const tlri_matrix* matrix, int parallelism, int keep_traces, tlri_run** out) {
    if (!matrix || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_run_matrix: null pointer");
    if (parallelism < 1) return fail(TLRI_ERR_INVALID_ARGUMENT, "parallelism must be >= 1");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<tlri_run>();
        handle->matrix = matrix->matrix;
        handle->meta = matrix->meta;
        handle->run = tlri::run_matrix(matrix->matrix, {parallelism, keep_traces != 0});
        for (const auto& o : handle->run.outcomes) {
            handle->strings.push_back(strings_of(o.scenario));
            if (!o.report) handle->failures.push_back(o.error);
        }
        *out = handle.release();
        return TLRI_OK;
    });
}

void tlri_run_free(tlri_run* run) { delete run; }

size_t tlri_run_count(const tlri_run* run) { return run ? run->run.outcomes.size() : 0; }

size_t tlri_run_failure_count(const tlri_run* run) { return run ? run->failures.size() : 0; }

const char* tlri_run_failure(const tlri_run* run, size_t index) {
    if (!run || index >= run->failures.size()) return nullptr;
    return run->failures[index].c_str();
}

tlri_status tlri_run_scenario(const tlri_run* run, size_t index, tlri_scenario_info* out) {
    if (!run || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_run_scenario: null pointer");
    if (index >= run->run.outcomes.size()) return fail(TLRI_ERR_INVALID_ARGUMENT, "scenario index out of range");
    fill_info(run->run.outcomes[index].scenario, run->strings[index], out);
    return TLRI_OK;
}

tlri_status tlri_run_report(const tlri_run* run, size_t index, tlri_report* out) {
    if (!run || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_run_report: null pointer");
    if (index >= run->run.outcomes.size()) return fail(TLRI_ERR_INVALID_ARGUMENT, "scenario index out of range");
    const auto& o = run->run.outcomes[index];
    if (!o.report) return fail(TLRI_ERR_INSUFFICIENT_DATA, o.error);
    fill_report(*o.report, out);
    return TLRI_OK;
}

tlri_status tlri_run_write(const tlri_run* run, const char* out_dir, int force, int emit_traces) {
    if (!run || !out_dir) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_run_write: null pointer");
    return guarded([&] {
        if (emit_traces) {
            for (const auto& o : run->run.outcomes)
                if (o.report && !o.traces)
                    throw tlri::Error("traces were not kept; run the matrix with keep_traces");
        }
        tlri::write_results(run->run, run->matrix, run->meta, out_dir, {force != 0, emit_traces != 0});
        return TLRI_OK;
    });
}

tlri_status tlri_results_load(const char* path, tlri_results** out) {
    if (!path || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_results_load: null pointer");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<tlri_results>();
        handle->rows = tlri::read_results_csv(path);
        *out = handle.release();
        return TLRI_OK;
    });
}

void tlri_results_free(tlri_results* results) { delete results; }

size_t tlri_results_count(const tlri_results* results) { return results ? results->rows.size() : 0; }

tlri_status tlri_results_row(const tlri_results* results, size_t index, tlri_result_row* out) {
    if (!results || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_results_row: null pointer");
    if (index >= results->rows.size()) return fail(TLRI_ERR_INVALID_ARGUMENT, "row index out of range");
    const auto& r = results->rows[index];
    out->scheme = r.scheme.c_str();
    out->env = r.env.c_str();
    out->leak = r.leak.c_str();
    out->alpha = r.alpha;
    out->n = r.n;
    out->seed = r.seed;
    fill_report(r.report, &out->report);
    return TLRI_OK;
}

tlri_status tlri_sweep_run(const tlri_matrix* matrix, const char* selector, const tlri_sweep_options* options,
                           tlri_sweep** out) {
    if (!matrix || !selector || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_sweep_run: null pointer");
    *out = nullptr;
    return guarded([&] {
        const auto& m = matrix->matrix;
        const auto matches = tlri::select_scenarios(m, selector);
        if (matches.size() != 1) {
            std::string msg = "selector '" + std::string(selector) + "' matches " +
                              std::to_string(matches.size()) + " scenarios (exactly one required)";
            for (const auto& s : matches) msg += "\n  " + s.id();
            throw tlri::ConfigError(msg);
        }
        const tlri::SweepSettings settings = m.sweep.value_or(tlri::SweepSettings{});
        std::string grid_spec = settings.grid;
        if (options && options->grid && *options->grid) grid_spec = options->grid;
        const auto grid = grid_spec.empty() ? tlri::default_grid(m.n_traces) : tlri::parse_grid(grid_spec);
        const std::uint64_t shuffle_seed =
            options && options->has_shuffle_seed ? options->shuffle_seed : settings.shuffle_seed;

        auto handle = std::make_unique<tlri_sweep>();
        handle->scenario = matches.front();
        handle->id = handle->scenario.id();
        auto outcome = tlri::run_scenario(handle->scenario, m, /*keep_traces=*/true);
        if (!outcome.traces) throw tlri::InsufficientDataError(outcome.error);
        tlri::SweepOptions sweep_opts;
        sweep_opts.bins = m.bins;
        sweep_opts.weights = m.weights;
        sweep_opts.min_prefix = settings.min_prefix;
        handle->curve = tlri::run_sweep(*outcome.traces, grid, shuffle_seed, sweep_opts);
        *out = handle.release();
        return TLRI_OK;
    });
}

void tlri_sweep_free(tlri_sweep* sweep) { delete sweep; }

const char* tlri_sweep_scenario_id(const tlri_sweep* sweep) { return sweep ? sweep->id.c_str() : nullptr; }

size_t tlri_sweep_point_count(const tlri_sweep* sweep) { return sweep ? sweep->curve.points.size() : 0; }

tlri_status tlri_sweep_point(const tlri_sweep* sweep, size_t index, int64_t* prefix_n, tlri_report* out) {
    if (!sweep || !out) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_sweep_point: null pointer");
    if (index >= sweep->curve.points.size()) return fail(TLRI_ERR_INVALID_ARGUMENT, "point index out of range");
    const auto& p = sweep->curve.points[index];
    if (prefix_n) *prefix_n = p.prefix_n;
    if (!p.report) return fail(TLRI_ERR_INSUFFICIENT_DATA, p.skip_reason);
    fill_report(*p.report, out);
    return TLRI_OK;
}

tlri_status tlri_sweep_write(const tlri_sweep* sweep, const char* out_dir, int force) {
    if (!sweep || !out_dir) return fail(TLRI_ERR_INVALID_ARGUMENT, "tlri_sweep_write: null pointer");
    return guarded([&] {
        tlri::write_sweep(sweep->curve, sweep->scenario, out_dir, force != 0);
        return TLRI_OK;
    });
}

}  // extern "C"
