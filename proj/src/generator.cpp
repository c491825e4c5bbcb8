// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/generator.hpp"

#include <vector>

#include "tlri/environment.hpp"

namespace tlri {

Injection generate_traces(const Scenario& scenario, const SchemeParams& params,
                          const InjectOptions& options) {
    if (scenario.n_traces < 2) throw ParameterError("generate_traces: n_traces must be >= 2");
    if (auto bad = params.violations(); !bad.empty())
        throw ParameterError("generate_traces: invalid scheme parameters: " + bad.front());

    const auto n = static_cast<std::size_t>(scenario.n_traces);
    std::vector<std::uint8_t> secrets(n);
    std::vector<double> env_times(n);

    DeterministicRng main_rng(scenario.seed);
    for (std::size_t i = 0; i < n; ++i) {
        secrets[i] = static_cast<std::uint8_t>(sample_bernoulli(main_rng, 0.5));
        env_times[i] = sample_environment(main_rng, scenario.environment, params).env_time;
    }

    DeterministicRng leak_rng(derive_seed(scenario.seed, fnv1a64("leak")));
    return inject(secrets, env_times, scenario, params, leak_rng, options);
}

}  // namespace tlri
