// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tlri {

// Error taxonomy shared by every module. The C API maps each onto an error code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument to a sampler or operator (negative std, p outside [0,1], ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid configuration (matrix file, selector, sweep grid).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A metric could not be computed because a class has too few observations.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

enum class Environment { Idle, Jitter, Loaded };

enum class LeakModel { None, Branch, MemcmpEarly, DivLatency, CacheIndex, BigBranch };

std::string_view to_string(Environment env);
std::string_view to_string(LeakModel leak);
std::optional<Environment> parse_environment(std::string_view name);
std::optional<LeakModel> parse_leak_model(std::string_view name);

/// Cycle-level shape parameters for one scheme preset. All times are in cycles.
struct SchemeParams {
    double baseline_cycles = 0.0;
    double sigma_dvfs = 0.0;       // relative drift std dev
    double sigma_idle = 0.0;
    double sigma_jitter = 0.0;
    int n_blocks = 1;
    double exp_queue_mean = 0.0;
    double interrupt_prob = 0.0;
    double exp_interrupt_mean = 0.0;
    double branch_delta = 0.0;
    double memcmp_delta = 0.0;     // early-exit compare shift
    double big_branch_delta = 0.0;
    int div_opportunities = 1;
    double div_base_rate = 0.0;
    double div_cost = 0.0;
    int cache_accesses = 1;
    double cache_base_miss = 0.0;
    double cache_miss_shift = 0.0;
    double cache_penalty = 0.0;

    /// Every violated invariant, each message naming its field. Empty when valid.
    std::vector<std::string> violations() const;
};

struct Scenario {
    std::string scheme_id;
    Environment environment = Environment::Idle;
    LeakModel leak_model = LeakModel::None;
    double alpha = 0.0;
    std::int64_t n_traces = 0;
    std::uint64_t seed = 0;

    /// Leak strength after the None-implies-zero rule.
    double effective_alpha() const { return leak_model == LeakModel::None ? 0.0 : alpha; }

    /// Filesystem-safe identifier, e.g. `kyber_idle_cache_index_a1`.
    std::string id() const;
};

struct TraceSet {
    std::vector<std::uint8_t> secrets;
    std::vector<double> timings;

    std::size_t size() const { return timings.size(); }
};

struct ClassSamples {
    std::vector<double> sample_0;
    std::vector<double> sample_1;
};

/// Order-preserving split of timings by secret label.
ClassSamples partition(const TraceSet& traces);

struct MetricReport {
    double mean_0 = 0.0;
    double mean_1 = 0.0;
    double std_0 = 0.0;
    double std_1 = 0.0;
    double pooled_std = 0.0;
    double welch_t = 0.0;
    double ks_d = 0.0;
    double cliff_delta = 0.0;
    double mi_bits = 0.0;
    double overlap = 1.0;
    double snr = 0.0;
    double raw_score = 0.0;
    double tlri = 0.0;
    std::int64_t n_0 = 0;
    std::int64_t n_1 = 0;
    bool welch_degenerate = false;
    bool snr_degenerate = false;
};

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace tlri
