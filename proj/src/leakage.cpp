// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/leakage.hpp"

#include <algorithm>

namespace tlri {

namespace {

double clamp_unit(double p, bool& clamped) {
    if (p < 0.0) {
        clamped = true;
        return 0.0;
    }
    if (p > 1.0) {
        clamped = true;
        return 1.0;
    }
    return p;
}

}  // namespace

double leak_signed_shift(int secret, double alpha, double delta_cycles) {
    return secret == 1 ? alpha * delta_cycles : -alpha * delta_cycles;
}

ClassRates div_latency_rates(double alpha, const SchemeParams& params) {
    ClassRates r;
    r.rate_1 = clamp_unit(params.div_base_rate * (1.0 + 0.6 * alpha), r.clamped);
    r.rate_0 = clamp_unit(params.div_base_rate * (1.0 - 0.3 * alpha), r.clamped);
    return r;
}

ClassRates cache_index_rates(double alpha, const SchemeParams& params) {
    ClassRates r;
    r.rate_1 = clamp_unit(params.cache_base_miss + alpha * params.cache_miss_shift, r.clamped);
    // The floor at zero is part of the model, not a clamp worth reporting.
    r.rate_0 = std::max(0.0, params.cache_base_miss - alpha * params.cache_miss_shift);
    return r;
}

LeakDraw leak_div_latency(DeterministicRng& rng, int secret, double alpha, const SchemeParams& params) {
    if (!(alpha >= 0.0)) throw ParameterError("leak_div_latency: alpha must be >= 0");
    const ClassRates rates = div_latency_rates(alpha, params);
    const double rate = secret == 1 ? rates.rate_1 : rates.rate_0;
    const std::int64_t events = sample_binomial(rng, params.div_opportunities, rate);
    const double unit_cost = alpha * params.div_cost;
    const double eta = sample_normal(rng, 0.0, 0.25 * unit_cost);
    return {static_cast<double>(events) * (unit_cost + eta), events};
}

LeakDraw leak_cache_index(DeterministicRng& rng, int secret, double alpha, const SchemeParams& params) {
    if (!(alpha >= 0.0)) throw ParameterError("leak_cache_index: alpha must be >= 0");
    const ClassRates rates = cache_index_rates(alpha, params);
    const double rate = secret == 1 ? rates.rate_1 : rates.rate_0;
    const std::int64_t misses = sample_binomial(rng, params.cache_accesses, rate);
    const double xi = sample_normal(rng, 0.0, 0.15 * params.cache_penalty);
    return {static_cast<double>(misses) * (params.cache_penalty + xi), misses};
}

LeakModel effective_leak_model(LeakModel requested, bool large_baseline) {
    if (requested == LeakModel::Branch && large_baseline) return LeakModel::BigBranch;
    return requested;
}

Injection inject(std::span<const std::uint8_t> secrets, std::span<const double> env_times,
                 const Scenario& scenario, const SchemeParams& params, DeterministicRng& leak_rng,
                 const InjectOptions& options) {
    if (secrets.size() != env_times.size())
        throw ParameterError("inject: secrets and environment timings differ in length");
    if (!(scenario.alpha >= 0.0)) throw ParameterError("inject: alpha must be >= 0");

    Injection out;
    out.effective_leak = effective_leak_model(scenario.leak_model, options.large_baseline);
    const double alpha = scenario.effective_alpha();

    switch (out.effective_leak) {
    case LeakModel::None:
    case LeakModel::Branch:
    case LeakModel::MemcmpEarly:
    case LeakModel::BigBranch:
        break;
    case LeakModel::DivLatency:
        if (div_latency_rates(alpha, params).clamped)
            out.warnings.push_back(scenario.id() + ": div_latency event rate clamped into [0,1]");
        break;
    case LeakModel::CacheIndex:
        if (cache_index_rates(alpha, params).clamped)
            out.warnings.push_back(scenario.id() + ": cache_index miss rate clamped to 1");
        break;
    default:
        throw ConfigError("inject: unknown leak model");
    }

    out.traces.secrets.assign(secrets.begin(), secrets.end());
    out.traces.timings.resize(env_times.size());
    for (std::size_t i = 0; i < env_times.size(); ++i) {
        const int s = secrets[i];
        double delta = 0.0;
        switch (out.effective_leak) {
        case LeakModel::None:
            break;
        case LeakModel::Branch:
            delta = leak_signed_shift(s, alpha, params.branch_delta);
            break;
        case LeakModel::MemcmpEarly:
            delta = leak_signed_shift(s, alpha, params.memcmp_delta);
            break;
        case LeakModel::BigBranch:
            delta = leak_signed_shift(s, alpha, params.big_branch_delta);
            break;
        case LeakModel::DivLatency:
            delta = leak_div_latency(leak_rng, s, alpha, params).delta;
            break;
        case LeakModel::CacheIndex:
            delta = leak_cache_index(leak_rng, s, alpha, params).delta;
            break;
        }
        double t = env_times[i] + delta;
        if (options.clipping) t = std::max(t, 0.0);
        out.traces.timings[i] = t;
    }
    return out;
}

}  // namespace tlri
