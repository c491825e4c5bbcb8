// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/core.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

namespace tlri {

namespace {

constexpr std::array<std::pair<Environment, std::string_view>, 3> kEnvNames{{
    {Environment::Idle, "idle"},
    {Environment::Jitter, "jitter"},
    {Environment::Loaded, "loaded"},
}};

constexpr std::array<std::pair<LeakModel, std::string_view>, 6> kLeakNames{{
    {LeakModel::None, "none"},
    {LeakModel::Branch, "branch"},
    {LeakModel::MemcmpEarly, "memcmp_early"},
    {LeakModel::DivLatency, "div_latency"},
    {LeakModel::CacheIndex, "cache_index"},
    {LeakModel::BigBranch, "big_branch"},
}};

void require_positive(std::vector<std::string>& out, std::string_view field, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        out.push_back(std::string(field) + " must be > 0 (got " + format_double(v) + ")");
}

void require_probability(std::vector<std::string>& out, std::string_view field, double v,
                         bool open_interval) {
    const bool ok = open_interval ? (v > 0.0 && v < 1.0) : (v >= 0.0 && v <= 1.0);
    if (!ok) {
        out.push_back(std::string(field) + " must be in " + (open_interval ? "(0,1)" : "[0,1]") +
                      " (got " + format_double(v) + ")");
    }
}

}  // namespace

std::string_view to_string(Environment env) {
    for (const auto& [e, name] : kEnvNames)
        if (e == env) return name;
    return "unknown";
}

std::string_view to_string(LeakModel leak) {
    for (const auto& [l, name] : kLeakNames)
        if (l == leak) return name;
    return "unknown";
}

std::optional<Environment> parse_environment(std::string_view name) {
    for (const auto& [e, n] : kEnvNames)
        if (n == name) return e;
    return std::nullopt;
}

std::optional<LeakModel> parse_leak_model(std::string_view name) {
    for (const auto& [l, n] : kLeakNames)
        if (n == name) return l;
    return std::nullopt;
}

std::vector<std::string> SchemeParams::violations() const {
    std::vector<std::string> out;
    require_positive(out, "baseline_cycles", baseline_cycles);
    require_positive(out, "sigma_dvfs", sigma_dvfs);
    require_positive(out, "sigma_idle", sigma_idle);
    require_positive(out, "sigma_jitter", sigma_jitter);
    if (n_blocks < 1) out.push_back("n_blocks must be >= 1 (got " + std::to_string(n_blocks) + ")");
    require_positive(out, "exp_queue_mean", exp_queue_mean);
    require_probability(out, "interrupt_prob", interrupt_prob, false);
    require_positive(out, "exp_interrupt_mean", exp_interrupt_mean);
    require_positive(out, "branch_delta", branch_delta);
    require_positive(out, "memcmp_delta", memcmp_delta);
    require_positive(out, "big_branch_delta", big_branch_delta);
    if (div_opportunities < 1)
        out.push_back("div_opportunities must be >= 1 (got " + std::to_string(div_opportunities) + ")");
    require_probability(out, "div_base_rate", div_base_rate, true);
    require_positive(out, "div_cost", div_cost);
    if (cache_accesses < 1)
        out.push_back("cache_accesses must be >= 1 (got " + std::to_string(cache_accesses) + ")");
    require_probability(out, "cache_base_miss", cache_base_miss, true);
    require_probability(out, "cache_miss_shift", cache_miss_shift, true);
    require_positive(out, "cache_penalty", cache_penalty);
    return out;
}

std::string Scenario::id() const {
    std::string alpha_text = format_double(alpha);
    for (char& c : alpha_text)
        if (c == '.') c = 'p';
    return scheme_id + "_" + std::string(to_string(environment)) + "_" +
           std::string(to_string(leak_model)) + "_a" + alpha_text;
}

ClassSamples partition(const TraceSet& traces) {
    ClassSamples out;
    for (std::size_t i = 0; i < traces.timings.size(); ++i) {
        if (traces.secrets[i] == 0)
            out.sample_0.push_back(traces.timings[i]);
        else
            out.sample_1.push_back(traces.timings[i]);
    }
    return out;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

}  // namespace tlri
