// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace tlri {

SnrResult snr_proxy(double mean_0, double mean_1, double pooled_std) {
    if (!(pooled_std >= 0.0)) throw ParameterError("snr_proxy: pooled_std must be >= 0");
    const double gap = std::fabs(mean_0 - mean_1);
    if (pooled_std == 0.0) {
        if (gap == 0.0) return {0.0, false};
        return {kSnrSentinel, true};
    }
    return {gap / pooled_std, false};
}

double mi_scaled(double mi_bits, double mi_cap) {
    if (!(mi_bits >= 0.0)) throw ParameterError("mi_scaled: mi_bits must be >= 0");
    if (!(mi_cap > 0.0)) throw ParameterError("mi_scaled: mi_cap must be > 0");
    return std::min(1.0, mi_bits / mi_cap);
}

TlriScore tlri(double snr, double ks_d, double cliff_delta, double overlap, double mi_bits,
               const TlriWeights& weights) {
    TlriScore s;
    s.raw = weights.w_snr * snr + weights.w_ks * ks_d + weights.w_cliff * std::fabs(cliff_delta) +
            weights.w_sep * (1.0 - overlap) + weights.w_mi * mi_scaled(mi_bits, weights.mi_cap);
    s.tlri = 1.0 / (1.0 + std::exp(-(s.raw - weights.logistic_shift)));
    return s;
}

void score(MetricReport& report, const TlriWeights& weights) {
    const SnrResult snr = snr_proxy(report.mean_0, report.mean_1, report.pooled_std);
    report.snr = snr.snr;
    report.snr_degenerate = snr.degenerate;
    const TlriScore s = tlri(report.snr, report.ks_d, report.cliff_delta, report.overlap,
                             report.mi_bits, weights);
    report.raw_score = s.raw;
    report.tlri = s.tlri;
}

MetricReport evaluate(const TraceSet& traces, int bins, const TlriWeights& weights) {
    MetricReport r = full_report(traces, bins);
    score(r, weights);
    return r;
}

}  // namespace tlri
