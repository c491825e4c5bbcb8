// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/environment.hpp"

#include <cmath>

namespace tlri {

EnvSample env_idle(DeterministicRng& rng, const SchemeParams& params) {
    EnvSample out;
    out.drift_eps = sample_normal(rng, 0.0, params.sigma_dvfs);
    out.additive_noise = sample_normal(rng, 0.0, params.sigma_idle);
    out.env_time = params.baseline_cycles * (1.0 + out.drift_eps) + out.additive_noise;
    return out;
}

EnvSample env_jitter(DeterministicRng& rng, const SchemeParams& params) {
    if (params.n_blocks < 1) throw ParameterError("env_jitter: n_blocks must be >= 1");
    EnvSample out;
    out.drift_eps = sample_normal(rng, 0.0, 1.5 * params.sigma_dvfs);
    const double block_std = params.sigma_jitter / std::sqrt(static_cast<double>(params.n_blocks));
    double jitter = 0.0;
    for (int j = 0; j < params.n_blocks; ++j) jitter += sample_normal(rng, 0.0, block_std);
    out.block_jitter = jitter;
    out.env_time = params.baseline_cycles * (1.0 + out.drift_eps) + jitter;
    return out;
}

EnvSample env_loaded(DeterministicRng& rng, const SchemeParams& params) {
    EnvSample out;
    out.queue_delay = sample_exponential(rng, params.exp_queue_mean);
    const int interrupted = sample_bernoulli(rng, params.interrupt_prob);
    const double interrupt_len = sample_exponential(rng, params.exp_interrupt_mean);
    out.additive_noise = sample_normal(rng, 0.0, 2.5 * params.sigma_idle);
    out.drift_eps = sample_normal(rng, 0.0, 2.0 * params.sigma_dvfs);
    out.structured_delay = interrupted * interrupt_len;
    out.env_time = params.baseline_cycles * (1.0 + out.drift_eps) + out.queue_delay +
                   out.structured_delay + out.additive_noise;
    return out;
}

EnvSample sample_environment(DeterministicRng& rng, Environment env, const SchemeParams& params) {
    switch (env) {
    case Environment::Idle:
        return env_idle(rng, params);
    case Environment::Jitter:
        return env_jitter(rng, params);
    case Environment::Loaded:
        return env_loaded(rng, params);
    }
    throw ConfigError("unknown environment");
}

}  // namespace tlri
