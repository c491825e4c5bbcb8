// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tlri/core.hpp"
#include "tlri/rng.hpp"

namespace tlri {

/// One environment-perturbed execution time before any secret-dependent term.
struct EnvSample {
    double env_time = 0.0;
    double drift_eps = 0.0;
    double additive_noise = 0.0;
    double structured_delay = 0.0;  // interrupt delay I*u
    double queue_delay = 0.0;       // loaded regime only
    double block_jitter = 0.0;      // jitter regime only
};

/// Idle: B(1+eps) + n, eps ~ N(0, sigma_dvfs), n ~ N(0, sigma_idle).
EnvSample env_idle(DeterministicRng& rng, const SchemeParams& params);

/// Jitter: B(1+eps) + sum of M block terms, each N(0, sigma_jitter/sqrt(M));
/// eps ~ N(0, 1.5 sigma_dvfs). No separate additive term.
EnvSample env_jitter(DeterministicRng& rng, const SchemeParams& params);

/// Loaded: B(1+eps) + q + I*u + n with exponential queueing q, Bernoulli
/// interrupts I of exponential length u, n ~ N(0, 2.5 sigma_idle) and
/// eps ~ N(0, 2 sigma_dvfs).
EnvSample env_loaded(DeterministicRng& rng, const SchemeParams& params);

EnvSample sample_environment(DeterministicRng& rng, Environment env, const SchemeParams& params);

}  // namespace tlri
