// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tlri/core.hpp"
#include "tlri/scoring.hpp"

namespace tlri {

struct SchemeEntry {
    std::string id;
    SchemeParams params;
    bool large_baseline = false;
};

struct SweepSettings {
    std::string grid;  // empty selects default_grid(n_traces)
    std::uint64_t shuffle_seed = 0;
    std::int64_t min_prefix = 200;
};

struct ScenarioMatrix {
    std::string name;
    std::vector<SchemeEntry> schemes;
    std::vector<Environment> environments;
    std::vector<LeakModel> leak_models;  // never contains None; the baseline is implicit
    std::vector<double> alphas{1.0};
    std::int64_t n_traces = 20000;
    std::uint64_t master_seed = 0;
    std::uint64_t warmup = 0;
    int bins = 64;
    TlriWeights weights;
    bool clipping = true;
    std::optional<SweepSettings> sweep;

    const SchemeEntry& scheme(std::string_view id) const;
};

/// Calibrated parameter presets shipped with the tool: kyber, saber, frodo.
std::optional<SchemeEntry> builtin_scheme(std::string_view id);
std::vector<std::string> builtin_scheme_names();

/// (field name, value) for every SchemeParams field in schema order.
std::vector<std::pair<std::string, double>> describe_params(const SchemeParams& params);

/// Names accepted by load_matrix in place of a path.
std::vector<std::string> builtin_matrix_names();

/// Parses matrix JSON text. `origin` labels error messages.
ScenarioMatrix parse_matrix(std::string_view text, std::string_view origin = "<config>");

/// Loads a matrix from a file, or a bundled matrix by name when `path_or_name`
/// is not an existing file. Throws ConfigError listing every violation.
ScenarioMatrix load_matrix(const std::string& path_or_name);

/// Every invariant violated by a matrix, each naming its field.
std::vector<std::string> validate_matrix(const ScenarioMatrix& matrix);

/// Canonical identity string hashed into the scenario seed: `scheme|env|leak|alpha`.
std::string scenario_key(std::string_view scheme_id, Environment env, LeakModel leak, double alpha);

/// derive_seed(warm_up_seed(master, warmup), fnv1a64(scenario_key(...))).
std::uint64_t scenario_seed(std::uint64_t master_seed, std::uint64_t warmup, std::string_view scheme_id,
                            Environment env, LeakModel leak, double alpha);

/// Run set in stable order: scheme, environment, then the None baseline
/// (alpha 0) followed by each leak model over each alpha.
std::vector<Scenario> expand_scenarios(const ScenarioMatrix& matrix);

}  // namespace tlri
