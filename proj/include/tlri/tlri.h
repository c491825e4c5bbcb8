/*
 * Copyright 2026 The tlri-sim Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/*
 * C interface of the timing-leakage simulator. Objects are opaque handles
 * created by *_load / *_run functions and released by the matching *_free.
 * Every fallible call returns a tlri_status; on failure a human-readable
 * message for the calling thread is available from tlri_last_error().
 *
 * Strings returned by accessors are owned by the handle they came from and
 * stay valid until that handle is freed.
 */

#ifndef TLRI_TLRI_H
#define TLRI_TLRI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TLRI_BUILDING_LIBRARY)
#    define TLRI_API __declspec(dllexport)
#  else
#    define TLRI_API __declspec(dllimport)
#  endif
#else
#  define TLRI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tlri_status {
    TLRI_OK = 0,
    TLRI_ERR_CONFIG = 1,
    TLRI_ERR_PARAMETER = 2,
    TLRI_ERR_INSUFFICIENT_DATA = 3,
    TLRI_ERR_IO = 4,
    TLRI_ERR_RUNTIME = 5,
    TLRI_ERR_INVALID_ARGUMENT = 6
} tlri_status;

typedef struct tlri_matrix tlri_matrix;
typedef struct tlri_run tlri_run;
typedef struct tlri_results tlri_results;
typedef struct tlri_sweep tlri_sweep;

typedef struct tlri_weights {
    double w_snr;
    double w_ks;
    double w_cliff;
    double w_sep;
    double w_mi;
    double mi_cap;
    double logistic_shift;
} tlri_weights;

typedef struct tlri_report {
    double mean_0;
    double mean_1;
    double std_0;
    double std_1;
    double pooled_std;
    double welch_t;
    double ks_d;
    double cliff_delta;
    double mi_bits;
    double overlap;
    double snr;
    double raw_score;
    double tlri;
    int64_t n_0;
    int64_t n_1;
    int welch_degenerate;
    int snr_degenerate;
} tlri_report;

typedef struct tlri_scenario_info {
    const char* id;
    const char* scheme;
    const char* env;
    const char* leak;
    double alpha;
    int64_t n_traces;
    uint64_t seed;
} tlri_scenario_info;

typedef struct tlri_result_row {
    const char* scheme;
    const char* env;
    const char* leak;
    double alpha;
    int64_t n;
    uint64_t seed;
    tlri_report report; /* n_0, n_1 and the degenerate flags are not stored in CSV */
} tlri_result_row;

typedef struct tlri_sweep_options {
    const char* grid;      /* NULL or "": matrix sweep grid, else the default log grid */
    int has_shuffle_seed;  /* 0: matrix sweep shuffle seed */
    uint64_t shuffle_seed;
} tlri_sweep_options;

/* Library identity. */
TLRI_API const char* tlri_version(void);
TLRI_API const char* tlri_generator_name(void);
TLRI_API const char* tlri_last_error(void);
TLRI_API tlri_weights tlri_default_weights(void);

/* Metrics and score of one labelled trace set. weights may be NULL. */
TLRI_API tlri_status tlri_evaluate(const uint8_t* secrets, const double* timings, size_t n, int bins,
                                   const tlri_weights* weights, tlri_report* out);

/* Scenario matrices: a JSON file path, or the name of a bundled matrix. */
TLRI_API tlri_status tlri_matrix_load(const char* path_or_name, tlri_matrix** out);
TLRI_API void tlri_matrix_free(tlri_matrix* matrix);
TLRI_API tlri_status tlri_matrix_set_seed(tlri_matrix* matrix, uint64_t master_seed);
TLRI_API tlri_status tlri_matrix_set_n_traces(tlri_matrix* matrix, int64_t n_traces);
TLRI_API size_t tlri_matrix_scenario_count(const tlri_matrix* matrix);
TLRI_API tlri_status tlri_matrix_scenario(const tlri_matrix* matrix, size_t index, tlri_scenario_info* out);

/* Full matrix runs. */
TLRI_API tlri_status tlri_run_matrix(const tlri_matrix* matrix, int parallelism, int keep_traces,
                                     tlri_run** out);
TLRI_API void tlri_run_free(tlri_run* run);
TLRI_API size_t tlri_run_count(const tlri_run* run);
TLRI_API size_t tlri_run_failure_count(const tlri_run* run);
/* Error text of the index-th failed scenario. */
TLRI_API const char* tlri_run_failure(const tlri_run* run, size_t index);
TLRI_API tlri_status tlri_run_scenario(const tlri_run* run, size_t index, tlri_scenario_info* out);
TLRI_API tlri_status tlri_run_report(const tlri_run* run, size_t index, tlri_report* out);
/* Writes results.csv, results.json, summary.csv (+ traces_<id>.csv). */
TLRI_API tlri_status tlri_run_write(const tlri_run* run, const char* out_dir, int force, int emit_traces);

/* Reading results.csv back. */
TLRI_API tlri_status tlri_results_load(const char* path, tlri_results** out);
TLRI_API void tlri_results_free(tlri_results* results);
TLRI_API size_t tlri_results_count(const tlri_results* results);
TLRI_API tlri_status tlri_results_row(const tlri_results* results, size_t index, tlri_result_row* out);

/* Prefix sweeps. The selector (scheme/env/leak/alpha, '*' wildcards) must
 * match exactly one scenario of the matrix. */
TLRI_API tlri_status tlri_sweep_run(const tlri_matrix* matrix, const char* selector,
                                    const tlri_sweep_options* options, tlri_sweep** out);
TLRI_API void tlri_sweep_free(tlri_sweep* sweep);
TLRI_API const char* tlri_sweep_scenario_id(const tlri_sweep* sweep);
TLRI_API size_t tlri_sweep_point_count(const tlri_sweep* sweep);
/* TLRI_ERR_INSUFFICIENT_DATA for a skipped point; prefix_n is still set. */
TLRI_API tlri_status tlri_sweep_point(const tlri_sweep* sweep, size_t index, int64_t* prefix_n,
                                      tlri_report* out);
/* Writes sweep_<id>.csv into out_dir. */
TLRI_API tlri_status tlri_sweep_write(const tlri_sweep* sweep, const char* out_dir, int force);

#ifdef __cplusplus
}
#endif

#endif /* TLRI_TLRI_H */
