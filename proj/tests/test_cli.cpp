// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the tlri-sim binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "tlri_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Result cli(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = std::string("\"") + TLRI_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::size_t lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("version and help") {
    const Result v = cli("--version");
    CHECK(v.code == 0);
    CHECK(v.out.find("tool=tlri-sim") != std::string::npos);
    CHECK(v.out.find("generator=mt19937_64") != std::string::npos);
    CHECK(cli("--no-such-flag").code == 1);
    CHECK(cli("run --parallelism 0").code == 1);
}

TEST_CASE("validate") {
    const Result ok = cli("validate");
    CHECK(ok.code == 0);
    CHECK(lines(ok.out) == 45);

    std::ofstream(path("neg.json")) << R"({"schemes": [{"id": "kyber", "params": {"sigma_idle": -5}}]})";
    const Result bad = cli("validate --config " + path("neg.json"));
    CHECK(bad.code == 1);
    CHECK(bad.err.find("sigma_idle") != std::string::npos);
    CHECK(cli("validate --config " + path("missing.json")).code == 1);
}

TEST_CASE("run writes the documented files and is deterministic") {
    const Result a = cli("run --seed 42 --out " + path("a"));
    REQUIRE(a.code == 0);
    for (const char* f : {"results.csv", "results.json", "summary.csv"}) CHECK(fs::exists(fs::path(path("a")) / f));
    CHECK(lines(slurp(fs::path(path("a")) / "results.csv")) == 46);
    // The ranked table leads with the strongest scenario.
    const std::string table = a.out.substr(a.out.find('\n') + 1);
    CHECK(table.rfind("kyber    idle    cache_index", 0) == 0);

    const Result b = cli("run --seed 42 --parallelism 8 --out " + path("b"));
    REQUIRE(b.code == 0);
    for (const char* f : {"results.csv", "results.json", "summary.csv"})
        CHECK(slurp(fs::path(path("a")) / f) == slurp(fs::path(path("b")) / f));
    CHECK(a.out == b.out);

    // Refuses to overwrite without --force.
    CHECK(cli("run --seed 42 --out " + path("a")).code == 2);
    CHECK(cli("run --seed 42 --force --out " + path("a")).code == 0);

    // Seeds printed by validate are the ones recorded in results.json.
    const Result v = cli("validate --seed 42");
    const auto doc = nlohmann::json::parse(slurp(fs::path(path("a")) / "results.json"));
    std::set<std::string> printed;
    std::istringstream in(v.out);
    for (std::string line; std::getline(in, line);) printed.insert(line.substr(line.find("seed=") + 5));
    for (const auto& s : doc["scenarios"]) CHECK(printed.count(std::to_string(s["seed"].get<std::uint64_t>())) == 1);
    CHECK(doc["metadata"]["seed_override"] == 42);
}

TEST_CASE("partial failure exits 3") {
    std::ofstream(path("tiny.json")) << R"({"master_seed": 3, "n_traces": 4, "schemes": ["kyber"],
        "environments": ["idle"], "leak_models": ["branch", "cache_index"], "alphas": [0.5, 1.0, 2.0]})";
    const Result r = cli("run --config " + path("tiny.json") + " --emit-traces --out " + path("tiny"));
    CHECK(r.code == 3);
    CHECK(r.err.find("scenario failed") != std::string::npos);
    CHECK(fs::exists(fs::path(path("tiny")) / "results.json"));
}

TEST_CASE("sweep") {
    const Result r = cli("sweep --n-traces 50000 --scenario kyber/idle/cache_index/1 --grid 200:50000:log12 --out " +
                         path("sw"));
    REQUIRE(r.code == 0);
    const std::string csv = slurp(fs::path(path("sw")) / "sweep_kyber_idle_cache_index_a1.csv");
    CHECK(lines(csv) == 13);

    const Result ambiguous = cli("sweep --scenario '*/idle/cache_index/1' --out " + path("sw2"));
    CHECK(ambiguous.code == 1);
    CHECK(ambiguous.err.find("saber_idle_cache_index_a1") != std::string::npos);
    CHECK(cli("sweep --out " + path("sw3")).code == 1);
}

TEST_CASE("output directory defaults to the environment variable") {
    const std::string dir = path("from_env");
    ::setenv("TLRI_OUT_DIR", dir.c_str(), 1);
    const Result e = cli("run --n-traces 500 --top 3");
    ::unsetenv("TLRI_OUT_DIR");
    CHECK(e.code == 0);
    CHECK(fs::exists(fs::path(dir) / "results.csv"));
}
