// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <thread>

#include "tlri/generator.hpp"
#include "tlri/scoring.hpp"

namespace tlri {

std::size_t MatrixRun::failures() const {
    return static_cast<std::size_t>(
        std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return !o.report; }));
}

ScenarioOutcome run_scenario(const Scenario& scenario, const ScenarioMatrix& matrix, bool keep_traces) {
    ScenarioOutcome out;
    out.scenario = scenario;
    try {
        const SchemeEntry& scheme = matrix.scheme(scenario.scheme_id);
        InjectOptions opts;
        opts.clipping = matrix.clipping;
        opts.large_baseline = scheme.large_baseline;
        Injection inj = generate_traces(scenario, scheme.params, opts);
        out.effective_leak = inj.effective_leak;
        out.warnings = std::move(inj.warnings);
        out.report = evaluate(inj.traces, matrix.bins, matrix.weights);
        if (keep_traces) out.traces = std::move(inj.traces);
    } catch (const Error& e) {
        out.report.reset();
        out.error = scenario.id() + ": " + e.what();
    }
    return out;
}

MatrixRun run_matrix(const ScenarioMatrix& matrix, const RunOptions& options) {
    const std::vector<Scenario> scenarios = expand_scenarios(matrix);
    MatrixRun run;
    run.outcomes.resize(scenarios.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < scenarios.size(); i = next++)
            run.outcomes[i] = run_scenario(scenarios[i], matrix, options.keep_traces);
    };
    const auto workers = static_cast<std::size_t>(std::max(1, options.parallelism));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, scenarios.size()); ++w) pool.emplace_back(worker);
    }
    return run;
}

std::vector<Scenario> select_scenarios(const ScenarioMatrix& matrix, const std::string& selector) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = selector.find('/', start);
        parts.push_back(selector.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() != 4)
        throw ConfigError("selector '" + selector + "' must have the form scheme/env/leak/alpha");

    std::optional<double> alpha;
    if (parts[3] != "*") {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), v);
        if (ec != std::errc() || ptr != parts[3].data() + parts[3].size())
            throw ConfigError("selector alpha '" + parts[3] + "' is not a number");
        alpha = v;
    }
    if (parts[1] != "*" && !parse_environment(parts[1]))
        throw ConfigError("selector environment '" + parts[1] + "' is unknown");
    if (parts[2] != "*" && !parse_leak_model(parts[2]))
        throw ConfigError("selector leak model '" + parts[2] + "' is unknown");

    std::vector<Scenario> out;
    for (const Scenario& s : expand_scenarios(matrix)) {
        if (parts[0] != "*" && parts[0] != s.scheme_id) continue;
        if (parts[1] != "*" && parts[1] != to_string(s.environment)) continue;
        if (parts[2] != "*" && parts[2] != to_string(s.leak_model)) continue;
        if (alpha && *alpha != s.alpha) continue;
        out.push_back(s);
    }
    return out;
}

}  // namespace tlri
