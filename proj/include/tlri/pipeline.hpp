// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tlri/config.hpp"
#include "tlri/core.hpp"

namespace tlri {

struct ScenarioOutcome {
    Scenario scenario;
    LeakModel effective_leak = LeakModel::None;
    std::optional<MetricReport> report;  // empty when the scenario failed
    std::string error;
    std::vector<std::string> warnings;
    std::optional<TraceSet> traces;      // kept only on request
};

struct RunOptions {
    int parallelism = 1;
    bool keep_traces = false;
};

struct MatrixRun {
    std::vector<ScenarioOutcome> outcomes;  // expand_scenarios order

    std::size_t failures() const;
};

/// Generates, measures and scores one scenario. Errors are captured in the outcome.
ScenarioOutcome run_scenario(const Scenario& scenario, const ScenarioMatrix& matrix, bool keep_traces = false);

/// Runs every scenario of the matrix. Scenarios are farmed out to
/// `parallelism` workers; each has its own RNG streams, so the result does
/// not depend on the worker count.
MatrixRun run_matrix(const ScenarioMatrix& matrix, const RunOptions& options = {});

/// Scenarios matching a `scheme/env/leak/alpha` selector; any part may be `*`.
std::vector<Scenario> select_scenarios(const ScenarioMatrix& matrix, const std::string& selector);

}  // namespace tlri
