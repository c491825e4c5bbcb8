// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlri/core.hpp"
#include "tlri/scoring.hpp"

namespace tlri {

inline constexpr std::int64_t kSweepMinPrefix = 200;
inline constexpr int kSweepDefaultPoints = 12;

struct SweepPoint {
    std::int64_t prefix_n = 0;
    std::optional<MetricReport> report;
    std::string skip_reason;  // set when report is empty
};

struct SweepCurve {
    std::vector<SweepPoint> points;
    std::uint64_t shuffle_seed = 0;
};

/// `count` log-spaced prefix sizes from `lo` to `hi` inclusive, rounded and deduplicated.
std::vector<std::int64_t> log_grid(std::int64_t lo, std::int64_t hi, int count);

/// 12 log-spaced points from max(200, n/100) to n.
std::vector<std::int64_t> default_grid(std::int64_t n);

/// Grid spec: `lo:hi:logK`, `lo:hi:linK`, or a comma list such as `500,1000,5000`.
std::vector<std::int64_t> parse_grid(std::string_view spec);

/// Fisher-Yates shuffle of (secret, timing) pairs under `seed`.
TraceSet shuffle_traces(const TraceSet& traces, std::uint64_t seed);

struct SweepOptions {
    int bins = kDefaultBins;
    TlriWeights weights;
    std::int64_t min_prefix = kSweepMinPrefix;
};

/// Shuffles once, then evaluates the full metric pipeline on each prefix.
/// Prefixes whose smaller class has fewer than 2 traces are recorded as skipped.
SweepCurve run_sweep(const TraceSet& traces, const std::vector<std::int64_t>& grid,
                     std::uint64_t shuffle_seed, const SweepOptions& options = {});

}  // namespace tlri
