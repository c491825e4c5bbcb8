// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tlri {

namespace {

void require_nonempty(std::span<const double> sample_0, std::span<const double> sample_1,
                      const char* what) {
    if (sample_0.empty())
        throw InsufficientDataError(std::string(what) + ": class 0 has no observations");
    if (sample_1.empty())
        throw InsufficientDataError(std::string(what) + ": class 1 has no observations");
}

void require_bins(int bins) {
    if (bins < 2) throw ParameterError("histogram: bins must be >= 2 (got " + std::to_string(bins) + ")");
}

std::vector<double> sorted_copy(std::span<const double> s) {
    std::vector<double> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

double mean_of(std::span<const double> s) {
    double sum = 0.0;
    for (double x : s) sum += x;
    return sum / static_cast<double>(s.size());
}

double sample_std(std::span<const double> s, double mean) {
    double ss = 0.0;
    for (double x : s) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(s.size() - 1));
}

double ks_sorted(std::span<const double> a, std::span<const double> b) {
    const double n0 = static_cast<double>(a.size());
    const double n1 = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n0 - static_cast<double>(j) / n1));
    }
    return d;
}

double cliff_sorted(std::span<const double> a, std::span<const double> b) {
    std::int64_t greater = 0;
    std::int64_t less = 0;
    std::size_t below = 0;     // # b strictly below x
    std::size_t not_above = 0; // # b at or below x
    const auto n1 = static_cast<std::int64_t>(b.size());
    for (double x : a) {
        while (below < b.size() && b[below] < x) ++below;
        if (not_above < below) not_above = below;
        while (not_above < b.size() && b[not_above] <= x) ++not_above;
        greater += static_cast<std::int64_t>(below);
        less += n1 - static_cast<std::int64_t>(not_above);
    }
    return static_cast<double>(greater - less) /
           (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace

Descriptive descriptive(std::span<const double> sample_0, std::span<const double> sample_1) {
    if (sample_0.size() < 2)
        throw InsufficientDataError("descriptive: class 0 has " + std::to_string(sample_0.size()) +
                                    " observation(s); at least 2 required");
    if (sample_1.size() < 2)
        throw InsufficientDataError("descriptive: class 1 has " + std::to_string(sample_1.size()) +
                                    " observation(s); at least 2 required");
    Descriptive d;
    d.mean_0 = mean_of(sample_0);
    d.mean_1 = mean_of(sample_1);
    d.std_0 = sample_std(sample_0, d.mean_0);
    d.std_1 = sample_std(sample_1, d.mean_1);
    d.pooled_std = std::sqrt((d.std_0 * d.std_0 + d.std_1 * d.std_1) / 2.0);
    return d;
}

WelchResult welch_t(std::span<const double> sample_0, std::span<const double> sample_1) {
    const Descriptive d = descriptive(sample_0, sample_1);
    const double denom = std::sqrt(d.std_0 * d.std_0 / static_cast<double>(sample_0.size()) +
                                   d.std_1 * d.std_1 / static_cast<double>(sample_1.size()));
    const double gap = d.mean_0 - d.mean_1;
    if (denom == 0.0) {
        WelchResult r;
        r.degenerate = true;
        if (gap != 0.0) r.t = std::copysign(std::numeric_limits<double>::infinity(), gap);
        return r;
    }
    return {gap / denom, false};
}

double ks_distance(std::span<const double> sample_0, std::span<const double> sample_1) {
    require_nonempty(sample_0, sample_1, "ks_distance");
    return ks_sorted(sorted_copy(sample_0), sorted_copy(sample_1));
}

double cliffs_delta(std::span<const double> sample_0, std::span<const double> sample_1) {
    require_nonempty(sample_0, sample_1, "cliffs_delta");
    return cliff_sorted(sorted_copy(sample_0), sorted_copy(sample_1));
}

HistogramPair build_histogram(std::span<const double> sample_0, std::span<const double> sample_1,
                              int bins) {
    require_bins(bins);
    require_nonempty(sample_0, sample_1, "histogram");

    double lo = sample_0.front();
    double hi = sample_0.front();
    for (auto s : {sample_0, sample_1}) {
        for (double x : s) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }

    HistogramPair h;
    const std::size_t nb = hi > lo ? static_cast<std::size_t>(bins) : 1;
    h.count_0.assign(nb, 0);
    h.count_1.assign(nb, 0);
    h.bin_edges.resize(nb + 1);
    const double span = hi - lo;
    for (std::size_t k = 0; k < nb; ++k)
        h.bin_edges[k] = lo + span * static_cast<double>(k) / static_cast<double>(nb);
    h.bin_edges[nb] = hi;

    auto bin_of = [&](double x) -> std::size_t {
        if (nb == 1) return 0;
        const double pos = (x - lo) / span * static_cast<double>(nb);
        const auto idx = static_cast<std::size_t>(std::max(pos, 0.0));
        return std::min(idx, nb - 1);
    };
    for (double x : sample_0) ++h.count_0[bin_of(x)];
    for (double x : sample_1) ++h.count_1[bin_of(x)];

    const double n0 = static_cast<double>(sample_0.size());
    const double n1 = static_cast<double>(sample_1.size());
    h.mass_0.resize(nb);
    h.mass_1.resize(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        h.mass_0[k] = static_cast<double>(h.count_0[k]) / n0;
        h.mass_1[k] = static_cast<double>(h.count_1[k]) / n1;
    }
    return h;
}

double binned_mi(const HistogramPair& hist) {
    std::int64_t n0 = 0;
    std::int64_t n1 = 0;
    for (std::size_t k = 0; k < hist.bins(); ++k) {
        n0 += hist.count_0[k];
        n1 += hist.count_1[k];
    }
    const double n = static_cast<double>(n0 + n1);
    const double p0 = static_cast<double>(n0) / n;
    const double p1 = static_cast<double>(n1) / n;

    double mi = 0.0;
    for (std::size_t k = 0; k < hist.bins(); ++k) {
        const double pb = static_cast<double>(hist.count_0[k] + hist.count_1[k]) / n;
        const double cells[2][2] = {{static_cast<double>(hist.count_0[k]) / n, p0},
                                    {static_cast<double>(hist.count_1[k]) / n, p1}};
        for (const auto& cell : cells) {
            const double joint = cell[0];
            if (joint > 0.0) mi += joint * std::log2(joint / (cell[1] * pb));
        }
    }
    return std::max(mi, 0.0);
}

double binned_mi(std::span<const double> sample_0, std::span<const double> sample_1, int bins) {
    return binned_mi(build_histogram(sample_0, sample_1, bins));
}

double overlap(const HistogramPair& hist) {
    double total = 0.0;
    for (std::size_t k = 0; k < hist.bins(); ++k) total += std::min(hist.mass_0[k], hist.mass_1[k]);
    return std::clamp(total, 0.0, 1.0);
}

double overlap(std::span<const double> sample_0, std::span<const double> sample_1, int bins) {
    return overlap(build_histogram(sample_0, sample_1, bins));
}

MetricReport full_report(const TraceSet& traces, int bins) {
    ClassSamples parts = partition(traces);
    // Sorting first makes every field independent of trace order.
    std::sort(parts.sample_0.begin(), parts.sample_0.end());
    std::sort(parts.sample_1.begin(), parts.sample_1.end());
    const std::span<const double> s0(parts.sample_0);
    const std::span<const double> s1(parts.sample_1);

    MetricReport r;
    const Descriptive d = descriptive(s0, s1);
    r.n_0 = static_cast<std::int64_t>(s0.size());
    r.n_1 = static_cast<std::int64_t>(s1.size());
    r.mean_0 = d.mean_0;
    r.mean_1 = d.mean_1;
    r.std_0 = d.std_0;
    r.std_1 = d.std_1;
    r.pooled_std = d.pooled_std;
    const WelchResult w = welch_t(s0, s1);
    r.welch_t = w.t;
    r.welch_degenerate = w.degenerate;
    r.ks_d = ks_sorted(s0, s1);
    r.cliff_delta = cliff_sorted(s0, s1);
    const HistogramPair hist = build_histogram(s0, s1, bins);
    r.mi_bits = binned_mi(hist);
    r.overlap = overlap(hist);
    return r;
}

}  // namespace tlri
