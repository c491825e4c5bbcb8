// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tlri/config.hpp"
#include "tlri/pipeline.hpp"
#include "tlri/sweep.hpp"

namespace tlri {

inline constexpr const char* kToolName = "tlri-sim";
inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr const char* kResultsHeader =
    "scheme,env,leak,alpha,n,mean0,mean1,std0,std1,pooled_std,welch_t,ks_d,cliff_delta,mi_bits,"
    "overlap,snr,raw,tlri,seed";

inline constexpr const char* kSummaryHeader = "scheme,env,baseline_tlri,worst_leak,worst_tlri,delta_tlri";

inline constexpr const char* kSweepHeader =
    "prefix_n,mean0,mean1,std0,std1,pooled_std,welch_t,ks_d,cliff_delta,mi_bits,overlap,snr,raw,tlri,status";

/// Provenance recorded alongside results.
struct RunMetadata {
    std::string config;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t config_seed = 0;
};

/// One parsed row of results.csv.
struct ResultRow {
    std::string scheme;
    std::string env;
    std::string leak;
    double alpha = 0.0;
    std::int64_t n = 0;
    MetricReport report;
    std::uint64_t seed = 0;
};

std::string results_csv(const MatrixRun& run);
std::string results_json(const MatrixRun& run, const ScenarioMatrix& matrix, const RunMetadata& meta);

/// Per (scheme, env): baseline TLRI, the leak model with the highest TLRI,
/// that TLRI, and the difference.
std::string summary_csv(const MatrixRun& run);

std::string traces_csv(const TraceSet& traces);
std::string sweep_csv(const SweepCurve& curve);

struct WriteOptions {
    bool force = false;
    bool emit_traces = false;
};

/// Writes results.csv, results.json, summary.csv and, on request,
/// traces_<id>.csv. Refuses to replace existing outputs unless forced.
/// Returns the written paths.
std::vector<std::filesystem::path> write_results(const MatrixRun& run, const ScenarioMatrix& matrix,
                                                 const RunMetadata& meta, const std::filesystem::path& dir,
                                                 const WriteOptions& options = {});

/// Writes sweep_<id>.csv and returns its path.
std::filesystem::path write_sweep(const SweepCurve& curve, const Scenario& scenario,
                                  const std::filesystem::path& dir, bool force = false);

std::vector<ResultRow> parse_results_csv(const std::string& text);
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

}  // namespace tlri
