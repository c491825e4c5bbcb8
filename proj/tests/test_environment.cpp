// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "tlri/config.hpp"
#include "tlri/environment.hpp"

using namespace tlri;
using tlri::testing::mean_of;
using tlri::testing::std_of;

namespace {

SchemeParams small_params() {
    SchemeParams p = builtin_scheme("kyber")->params;
    p.baseline_cycles = 1e4;
    p.sigma_dvfs = 0.002;
    p.sigma_idle = 30.0;
    return p;
}

std::vector<double> env_times(Environment env, const SchemeParams& p, int n, std::uint64_t seed) {
    DeterministicRng rng(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& t : out) t = sample_environment(rng, env, p).env_time;
    return out;
}

}  // namespace

TEST_CASE("idle regime") {
    SchemeParams p = small_params();
    SUBCASE("zero noise gives the baseline") {
        p.sigma_dvfs = 0.0;
        p.sigma_idle = 0.0;
        DeterministicRng rng(1);
        for (int i = 0; i < 100; ++i) CHECK(env_idle(rng, p).env_time == p.baseline_cycles);
    }
    SUBCASE("variance composes from independent terms") {
        const int n = 100'000;
        const auto xs = env_times(Environment::Idle, p, n, 11);
        const double total = std::sqrt(std::pow(p.baseline_cycles * p.sigma_dvfs, 2) + p.sigma_idle * p.sigma_idle);
        CHECK(total == doctest::Approx(36.06).epsilon(1e-3));
        CHECK(std::abs(mean_of(xs) - p.baseline_cycles) < 3.0 * total / std::sqrt(n));
        CHECK(std::abs(std_of(xs) - total) / total < 0.03);
    }
    SUBCASE("same state gives the same sample") {
        DeterministicRng a(8), b(8);
        for (int i = 0; i < 50; ++i) {
            const EnvSample x = env_idle(a, p);
            const EnvSample y = env_idle(b, p);
            CHECK(x.env_time == y.env_time);
            CHECK(x.drift_eps == y.drift_eps);
            CHECK(x.additive_noise == y.additive_noise);
        }
    }
}

TEST_CASE("jitter regime") {
    SchemeParams p = small_params();
    SUBCASE("a single block is one normal draw") {
        p.n_blocks = 1;
        p.sigma_jitter = 100.0;
        DeterministicRng a(3), b(3);
        const EnvSample s = env_jitter(a, p);
        const double eps = sample_normal(b, 0.0, 1.5 * p.sigma_dvfs);
        const double x = sample_normal(b, 0.0, 100.0);
        CHECK(s.drift_eps == eps);
        CHECK(s.block_jitter == x);
        CHECK(s.env_time == p.baseline_cycles * (1.0 + eps) + x);
        CHECK(s.additive_noise == 0.0);
        CHECK(s.structured_delay == 0.0);
    }
    SUBCASE("block scaling keeps the total jitter variance") {
        p.sigma_jitter = 100.0;
        for (int m : {4, 64, 1024}) {
            CAPTURE(m);
            p.n_blocks = m;
            DeterministicRng rng(static_cast<std::uint64_t>(m));
            std::vector<double> xs(100'000);
            for (auto& x : xs) x = env_jitter(rng, p).block_jitter;
            CHECK(std::abs(std_of(xs) - 100.0) / 100.0 < 0.03);
        }
    }
    SUBCASE("zero noise gives the baseline") {
        p.sigma_dvfs = 0.0;
        p.sigma_jitter = 0.0;
        DeterministicRng rng(1);
        for (int i = 0; i < 100; ++i) CHECK(env_jitter(rng, p).env_time == p.baseline_cycles);
    }
    SUBCASE("zero blocks is rejected") {
        p.n_blocks = 0;
        DeterministicRng rng(1);
        CHECK_THROWS_AS(env_jitter(rng, p), ParameterError);
    }
}

TEST_CASE("loaded regime") {
    SchemeParams p = small_params();
    SUBCASE("no interrupts means no interrupt delay") {
        p.interrupt_prob = 0.0;
        DeterministicRng rng(2);
        for (int i = 0; i < 10'000; ++i) CHECK(env_loaded(rng, p).structured_delay == 0.0);
    }
    SUBCASE("mean structured delay is additive") {
        p.exp_queue_mean = 200.0;
        p.interrupt_prob = 0.05;
        p.exp_interrupt_mean = 2000.0;
        DeterministicRng rng(12);
        std::vector<double> xs(100'000);
        for (auto& x : xs) {
            const EnvSample s = env_loaded(rng, p);
            x = s.queue_delay + s.structured_delay;
        }
        CHECK(std::abs(mean_of(xs) - 300.0) / 300.0 < 0.03);
    }
    SUBCASE("loaded is noisier than idle on the same preset") {
        const auto idle = env_times(Environment::Idle, p, 100'000, 21);
        const auto loaded = env_times(Environment::Loaded, p, 100'000, 21);
        CHECK(std_of(loaded) > std_of(idle));
    }
}

TEST_CASE("regime properties at the shipped presets") {
    for (const auto& name : builtin_scheme_names()) {
        CAPTURE(name);
        const SchemeParams p = builtin_scheme(name)->params;
        const auto idle = env_times(Environment::Idle, p, 100'000, 31);
        const auto jitter = env_times(Environment::Jitter, p, 100'000, 32);
        const auto loaded = env_times(Environment::Loaded, p, 100'000, 33);
        CHECK(std_of(idle) <= std_of(jitter));
        CHECK(std_of(jitter) <= std_of(loaded));
        for (const auto* xs : {&idle, &jitter, &loaded})
            CHECK(mean_of(*xs) >= p.baseline_cycles - 5.0 * std_of(*xs));
    }
}
