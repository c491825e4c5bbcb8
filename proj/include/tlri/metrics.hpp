// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tlri/core.hpp"

namespace tlri {

inline constexpr int kDefaultBins = 64;

struct Descriptive {
    double mean_0 = 0.0;
    double mean_1 = 0.0;
    double std_0 = 0.0;
    double std_1 = 0.0;
    double pooled_std = 0.0;
};

/// Per-class means, (n-1) standard deviations, and sqrt((s0^2 + s1^2) / 2).
/// Throws InsufficientDataError when a class has fewer than 2 points.
Descriptive descriptive(std::span<const double> sample_0, std::span<const double> sample_1);

struct WelchResult {
    double t = 0.0;
    /// Both classes constant. `t` is then +-inf for distinct means and 0 otherwise.
    bool degenerate = false;
};

/// (mean_0 - mean_1) / sqrt(s0^2/n0 + s1^2/n1).
WelchResult welch_t(std::span<const double> sample_0, std::span<const double> sample_1);

/// Exact two-sample sup |F0 - F1| by sorted merge; ties advance together.
double ks_distance(std::span<const double> sample_0, std::span<const double> sample_1);

/// Pr(t0 > t1) - Pr(t0 < t1) over all pairs, computed from sorted ranks.
double cliffs_delta(std::span<const double> sample_0, std::span<const double> sample_1);

/// Per-class counts on shared equal-width bins spanning the pooled range.
/// A constant pooled sample collapses to a single bin.
struct HistogramPair {
    std::vector<double> bin_edges;
    std::vector<std::int64_t> count_0;
    std::vector<std::int64_t> count_1;
    std::vector<double> mass_0;
    std::vector<double> mass_1;

    std::size_t bins() const { return count_0.size(); }
};

HistogramPair build_histogram(std::span<const double> sample_0, std::span<const double> sample_1,
                              int bins);

/// Plug-in I(S;T) in bits over the joint (class, bin) table.
double binned_mi(const HistogramPair& hist);
double binned_mi(std::span<const double> sample_0, std::span<const double> sample_1, int bins);

/// Histogram intersection sum_b min(p0(b), p1(b)).
double overlap(const HistogramPair& hist);
double overlap(std::span<const double> sample_0, std::span<const double> sample_1, int bins);

/// Every distinguishability statistic from one partition. The histogram is
/// built once and shared by MI and overlap. Scoring fields are left at zero.
MetricReport full_report(const TraceSet& traces, int bins = kDefaultBins);

}  // namespace tlri
