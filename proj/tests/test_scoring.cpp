// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "tlri/config.hpp"
#include "tlri/generator.hpp"
#include "tlri/metrics.hpp"
#include "tlri/rng.hpp"
#include "tlri/scoring.hpp"

using namespace tlri;

namespace {

TlriScore score_of(double snr, double ks, double cliff, double ov, double mi, const TlriWeights& w = {}) {
    return tlri::tlri(snr, ks, cliff, ov, mi, w);
}

}  // namespace

TEST_CASE("SNR proxy") {
    CHECK(snr_proxy(10.0, 10.0, 3.0).snr == 0.0);
    CHECK(snr_proxy(100.0, 180.0, 40.0).snr == 2.0);
    CHECK(snr_proxy(180.0, 100.0, 40.0).snr == 2.0);
    const SnrResult degenerate = snr_proxy(1.0, 2.0, 0.0);
    CHECK(degenerate.degenerate);
    CHECK(degenerate.snr == kSnrSentinel);
    CHECK(snr_proxy(2.0, 2.0, 0.0).snr == 0.0);
    CHECK_THROWS_AS(snr_proxy(0.0, 1.0, -1.0), ParameterError);
}

TEST_CASE("SNR matches the analytic branch gap") {
    const SchemeParams p = builtin_scheme("kyber")->params;
    Scenario s{"kyber", Environment::Idle, LeakModel::Branch, 1.0, 20000, 13};
    const MetricReport r = evaluate(generate_traces(s, p).traces);
    const double sigma_total = std::hypot(p.baseline_cycles * p.sigma_dvfs, p.sigma_idle);
    const double expected = 2.0 * p.branch_delta / sigma_total;
    CHECK(std::abs(r.snr - expected) / expected < 0.05);
}

TEST_CASE("MI scaling") {
    CHECK(mi_scaled(0.0, 0.5) == 0.0);
    CHECK(mi_scaled(0.25, 0.5) == 0.5);
    CHECK(mi_scaled(0.9, 0.5) == 1.0);
    CHECK_THROWS_AS(mi_scaled(-0.1, 0.5), ParameterError);
}

TEST_CASE("TLRI mapping") {
    const double floor = 1.0 / (1.0 + std::exp(1.5));
    const TlriScore zero = score_of(0.0, 0.0, 0.0, 1.0, 0.0);
    CHECK(zero.raw == 0.0);
    CHECK(zero.tlri == floor);
    CHECK(zero.tlri == doctest::Approx(0.18243).epsilon(1e-4));

    // With a unit SNR weight, SNR 1.5 puts raw exactly at the logistic midpoint.
    TlriWeights unit;
    unit.w_snr = 1.0;
    CHECK(score_of(1.5, 0.0, 0.0, 1.0, 0.0, unit).tlri == 0.5);

    // Worked example; Î = 0.363 corresponds to 0.1815 bits at cap 0.5.
    const TlriScore ex = score_of(2.0, 0.407, 0.548, 0.6, 0.1815);
    const double raw = 0.9 * 2.0 + 1.3 * 0.407 + 1.1 * 0.548 + 1.2 * 0.4 + 0.9 * 0.363;
    CHECK(ex.raw == doctest::Approx(raw).epsilon(1e-12));
    CHECK(ex.raw == doctest::Approx(3.7386).epsilon(1e-9));
    CHECK(ex.tlri == doctest::Approx(1.0 / (1.0 + std::exp(-(raw - 1.5)))).epsilon(1e-12));
    CHECK(std::abs(ex.tlri - 0.904) < 5e-4);

    // Negative Cliff deltas count by magnitude.
    CHECK(score_of(0.5, 0.1, -0.3, 0.8, 0.01).raw == score_of(0.5, 0.1, 0.3, 0.8, 0.01).raw);
}

TEST_CASE("TLRI is bounded and monotone in every component") {
    DeterministicRng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const double snr = 5.0 * rng.uniform01();
        const double ks = rng.uniform01();
        const double cliff = 2.0 * rng.uniform01() - 1.0;
        const double ov = rng.uniform01();
        const double mi = rng.uniform01();
        const double base = score_of(snr, ks, cliff, ov, mi).tlri;
        CHECK(base > 0.0);
        CHECK(base < 1.0);
        const double step = 0.1 * rng.uniform01();
        CHECK(score_of(snr + step, ks, cliff, ov, mi).tlri >= base);
        CHECK(score_of(snr, std::min(1.0, ks + step), cliff, ov, mi).tlri >= base);
        CHECK(score_of(snr, ks, cliff < 0 ? cliff - step : cliff + step, ov, mi).tlri >= base);
        CHECK(score_of(snr, ks, cliff, std::max(0.0, ov - step), mi).tlri >= base);
        CHECK(score_of(snr, ks, cliff, ov, mi + step).tlri >= base);
    }
}

TEST_CASE("evaluate scores a full report") {
    const SchemeParams p = builtin_scheme("saber")->params;
    Scenario s{"saber", Environment::Loaded, LeakModel::CacheIndex, 1.0, 5000, 3};
    const TraceSet t = generate_traces(s, p).traces;
    const MetricReport r = evaluate(t);
    const TlriScore direct = score_of(r.snr, r.ks_d, r.cliff_delta, r.overlap, r.mi_bits);
    CHECK(r.raw_score == direct.raw);
    CHECK(r.tlri == direct.tlri);
    CHECK(r.snr == snr_proxy(r.mean_0, r.mean_1, r.pooled_std).snr);
}
