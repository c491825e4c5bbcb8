// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/rng.hpp"

#include <cmath>
#include <limits>

#include "tlri/core.hpp"

namespace tlri {

std::uint64_t DeterministicRng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("uniform_below: bound must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
}

// Marsaglia polar method; the second variate of each accepted pair is cached.
double sample_standard_normal(DeterministicRng& rng) {
    if (rng.has_spare_normal_) {
        rng.has_spare_normal_ = false;
        return rng.spare_normal_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * rng.uniform01() - 1.0;
        v = 2.0 * rng.uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    rng.spare_normal_ = v * factor;
    rng.has_spare_normal_ = true;
    return u * factor;
}

double sample_normal(DeterministicRng& rng, double mean, double std) {
    if (!(std >= 0.0)) throw ParameterError("sample_normal: std must be >= 0");
    if (std == 0.0) return mean;
    return mean + std * sample_standard_normal(rng);
}

double sample_exponential(DeterministicRng& rng, double mean) {
    if (!(mean > 0.0)) throw ParameterError("sample_exponential: mean must be > 0");
    // 1 - U lies in (0, 1], so the log is finite.
    return -mean * std::log1p(-rng.uniform01());
}

int sample_bernoulli(DeterministicRng& rng, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_bernoulli: p must be in [0,1]");
    return rng.uniform01() < p ? 1 : 0;
}

// Exact sequential inversion of the binomial CDF. Work is O(n) in the worst
// case, which is fine for the opportunity counts used here (n <= 1e4).
std::int64_t sample_binomial(DeterministicRng& rng, std::int64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_binomial: p must be in [0,1]");
    if (n < 0) throw ParameterError("sample_binomial: n must be >= 0");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    if (p > 0.5) return n - sample_binomial(rng, n, 1.0 - p);

    const double q = 1.0 - p;
    const double ratio = p / q;
    double pmf = std::pow(q, static_cast<double>(n));
    if (pmf < 1e-280) {
        // Inversion would underflow; fall back to counting successes.
        std::int64_t k = 0;
        for (std::int64_t i = 0; i < n; ++i) k += sample_bernoulli(rng, p);
        return k;
    }
    double u = rng.uniform01();
    std::int64_t k = 0;
    while (u >= pmf && k < n) {
        u -= pmf;
        pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        ++k;
    }
    return k;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t key) {
    return splitmix64(master ^ splitmix64(key));
}

std::uint64_t warm_up_seed(std::uint64_t master, std::uint64_t warmup) {
    if (warmup == 0) return master;
    DeterministicRng rng(master);
    rng.discard(warmup - 1);
    return rng.next_u64();
}

}  // namespace tlri
