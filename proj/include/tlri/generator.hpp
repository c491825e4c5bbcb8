// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tlri/core.hpp"
#include "tlri/leakage.hpp"

namespace tlri {

/// Synthesizes the traces of one scenario from `scenario.seed`.
///
/// Stream layout: the scenario seed drives secrets and environment noise,
/// interleaved per trace (secret, then environment draws). Leak draws use a
/// second stream seeded with derive_seed(scenario.seed, fnv1a64("leak")), so
/// changing the leak model never perturbs the secrets or the noise.
Injection generate_traces(const Scenario& scenario, const SchemeParams& params,
                          const InjectOptions& options = {});

}  // namespace tlri
