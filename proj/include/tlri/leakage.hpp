// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlri/core.hpp"
#include "tlri/rng.hpp"

namespace tlri {

struct LeakDraw {
    double delta = 0.0;
    std::optional<std::int64_t> event_count;
};

/// Per-class event probabilities after clamping into [0, 1].
struct ClassRates {
    double rate_0 = 0.0;
    double rate_1 = 0.0;
    bool clamped = false;
};

/// +alpha*delta for s = 1, -alpha*delta for s = 0.
double leak_signed_shift(int secret, double alpha, double delta_cycles);

/// rho(1) = rho0(1 + 0.6 alpha), rho(0) = rho0(1 - 0.3 alpha).
ClassRates div_latency_rates(double alpha, const SchemeParams& params);

/// pi(1) = pi0 + alpha dpi, pi(0) = max(0, pi0 - alpha dpi).
ClassRates cache_index_rates(double alpha, const SchemeParams& params);

/// E ~ Binomial(L, rho(s)); delta = E * (alpha c + eta), eta ~ N(0, 0.25 alpha c)
/// drawn once per trace.
LeakDraw leak_div_latency(DeterministicRng& rng, int secret, double alpha, const SchemeParams& params);

/// M ~ Binomial(L', pi(s)); delta = M * (P + xi), xi ~ N(0, 0.15 P) drawn once per trace.
LeakDraw leak_cache_index(DeterministicRng& rng, int secret, double alpha, const SchemeParams& params);

/// Branch is promoted to the large-penalty shift on large-baseline schemes.
LeakModel effective_leak_model(LeakModel requested, bool large_baseline);

struct InjectOptions {
    bool clipping = true;
    bool large_baseline = false;
};

struct Injection {
    TraceSet traces;
    LeakModel effective_leak = LeakModel::None;
    std::vector<std::string> warnings;
};

/// Final timing t = env_time + delta(s), clipped at 0 when enabled.
/// Leak draws come from `leak_rng` so the environment stream layout does not
/// depend on the leak model.
Injection inject(std::span<const std::uint8_t> secrets, std::span<const double> env_times,
                 const Scenario& scenario, const SchemeParams& params, DeterministicRng& leak_rng,
                 const InjectOptions& options = {});

}  // namespace tlri
