// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tlri {

/// Name recorded in result metadata. Changing the engine or any sampler
/// below changes every generated trace, so bump it together with them.
inline constexpr std::string_view kGeneratorName = "mt19937_64/splitmix64-derive/polar-normal";

/// Seeded 64-bit stream. The engine's output sequence is fixed by the C++
/// standard; all distribution code is local so the mapping from seed to
/// samples does not depend on the standard library vendor.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Rejection keeps it unbiased.
    std::uint64_t uniform_below(std::uint64_t bound);

    void discard(std::uint64_t count) { engine_.discard(count); }

private:
    std::mt19937_64 engine_;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;

    friend double sample_standard_normal(DeterministicRng& rng);
};

double sample_standard_normal(DeterministicRng& rng);
double sample_normal(DeterministicRng& rng, double mean, double std);
double sample_exponential(DeterministicRng& rng, double mean);
int sample_bernoulli(DeterministicRng& rng, double p);
std::int64_t sample_binomial(DeterministicRng& rng, std::int64_t n, double p);

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a over bytes; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view bytes);

/// Seed of an independent substream: splitmix64(master ^ splitmix64(key)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t key);

/// Master seed after discarding `warmup` draws of a stream seeded with it.
/// A warm-up of 0 returns the seed unchanged.
std::uint64_t warm_up_seed(std::uint64_t master, std::uint64_t warmup);

}  // namespace tlri
