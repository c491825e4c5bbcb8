// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tlri/core.hpp"
#include "tlri/metrics.hpp"

namespace tlri {

/// Weights of the composite score. Defaults are the published constants.
struct TlriWeights {
    double w_snr = 0.9;
    double w_ks = 1.3;
    double w_cliff = 1.1;
    double w_sep = 1.2;
    double w_mi = 0.9;
    double mi_cap = 0.5;
    double logistic_shift = 1.5;
};

/// Cap applied when the pooled deviation is zero but the means differ.
inline constexpr double kSnrSentinel = 1e6;

struct SnrResult {
    double snr = 0.0;
    bool degenerate = false;
};

SnrResult snr_proxy(double mean_0, double mean_1, double pooled_std);

/// min(1, mi / cap)
double mi_scaled(double mi_bits, double mi_cap);

struct TlriScore {
    double raw = 0.0;
    double tlri = 0.0;
};

/// raw = w_snr SNR + w_ks D + w_cliff |delta| + w_sep (1 - overlap) + w_mi MI_hat,
/// TLRI = 1 / (1 + exp(-(raw - shift))).
TlriScore tlri(double snr, double ks_d, double cliff_delta, double overlap, double mi_bits,
               const TlriWeights& weights = {});

/// Fills snr, raw_score and tlri of a report whose metric fields are set.
void score(MetricReport& report, const TlriWeights& weights = {});

/// full_report followed by score.
MetricReport evaluate(const TraceSet& traces, int bins = kDefaultBins, const TlriWeights& weights = {});

}  // namespace tlri
