// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "tlri/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "tlri/rng.hpp"

namespace tlri {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view spec) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("sweep grid '" + std::string(spec) + "': '" + std::string(text) +
                          "' is not an integer");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::vector<std::int64_t> log_grid(std::int64_t lo, std::int64_t hi, int count) {
    if (lo < 1 || hi < lo || count < 1)
        throw ConfigError("sweep grid: need 1 <= lo <= hi and at least one point");
    if (count == 1 || lo == hi) return {hi};
    std::vector<std::int64_t> out;
    const double a = std::log(static_cast<double>(lo));
    const double b = std::log(static_cast<double>(hi));
    for (int k = 0; k < count; ++k) {
        std::int64_t v = k == 0           ? lo
                         : k == count - 1 ? hi
                                          : std::llround(std::exp(a + (b - a) * k / (count - 1)));
        if (out.empty() || v > out.back()) out.push_back(v);
    }
    return out;
}

std::vector<std::int64_t> default_grid(std::int64_t n) {
    return log_grid(std::min(n, std::max<std::int64_t>(kSweepMinPrefix, n / 100)), n,
                    kSweepDefaultPoints);
}

std::vector<std::int64_t> parse_grid(std::string_view spec) {
    const auto parts = split(spec, ':');
    if (parts.size() == 3) {
        const std::int64_t lo = parse_int(parts[0], spec);
        const std::int64_t hi = parse_int(parts[1], spec);
        const std::string_view mode = parts[2];
        if (mode.starts_with("log")) {
            return log_grid(lo, hi, static_cast<int>(parse_int(mode.substr(3), spec)));
        }
        if (mode.starts_with("lin")) {
            const auto count = parse_int(mode.substr(3), spec);
            if (lo < 1 || hi < lo || count < 1) throw ConfigError("sweep grid '" + std::string(spec) + "' is empty");
            std::vector<std::int64_t> out;
            for (std::int64_t k = 0; k < count; ++k) {
                const std::int64_t v =
                    count == 1 ? hi : lo + (hi - lo) * k / (count - 1);
                if (out.empty() || v > out.back()) out.push_back(v);
            }
            return out;
        }
        throw ConfigError("sweep grid '" + std::string(spec) + "': spacing must be logK or linK");
    }
    if (parts.size() != 1) throw ConfigError("sweep grid '" + std::string(spec) + "' is malformed");
    std::vector<std::int64_t> out;
    for (auto item : split(spec, ',')) out.push_back(parse_int(item, spec));
    return out;
}

TraceSet shuffle_traces(const TraceSet& traces, std::uint64_t seed) {
    TraceSet out = traces;
    DeterministicRng rng(seed);
    for (std::size_t i = out.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_below(i));
        std::swap(out.secrets[i - 1], out.secrets[j]);
        std::swap(out.timings[i - 1], out.timings[j]);
    }
    return out;
}

SweepCurve run_sweep(const TraceSet& traces, const std::vector<std::int64_t>& grid,
                     std::uint64_t shuffle_seed, const SweepOptions& options) {
    if (grid.empty()) throw ConfigError("sweep grid is empty");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (grid[k] <= grid[k - 1]) throw ConfigError("sweep grid must be strictly increasing");
    if (grid.front() < options.min_prefix)
        throw ConfigError("sweep grid starts at " + std::to_string(grid.front()) +
                          ", below the minimum prefix " + std::to_string(options.min_prefix));
    const auto n = static_cast<std::int64_t>(traces.size());
    if (grid.back() > n)
        throw ConfigError("sweep grid ends at " + std::to_string(grid.back()) + " but only " +
                          std::to_string(n) + " traces exist");

    const TraceSet shuffled = shuffle_traces(traces, shuffle_seed);
    SweepCurve curve;
    curve.shuffle_seed = shuffle_seed;
    for (const std::int64_t prefix : grid) {
        TraceSet head;
        head.secrets.assign(shuffled.secrets.begin(), shuffled.secrets.begin() + prefix);
        head.timings.assign(shuffled.timings.begin(), shuffled.timings.begin() + prefix);
        SweepPoint point;
        point.prefix_n = prefix;
        const auto ones = std::count(head.secrets.begin(), head.secrets.end(), std::uint8_t{1});
        const auto smaller = std::min<std::int64_t>(ones, prefix - ones);
        if (smaller < 2) {
            point.skip_reason = "smaller class has " + std::to_string(smaller) + " trace(s)";
        } else {
            point.report = evaluate(head, options.bins, options.weights);
        }
        curve.points.push_back(std::move(point));
    }
    return curve;
}

}  // namespace tlri
