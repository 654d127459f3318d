// SPDX-License-Identifier: Apache-2.0
//
// ris-sim: reduced-subspace channel estimation for reconfigurable intelligent surfaces
// Copyright (C) 2026 The ris-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include <catch2/catch_amalgamated.hpp>

#include "ris/cli.hpp"
#include "ris/config.hpp"
#include "ris/parallel.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ris;
namespace fs = std::filesystem;
using nlohmann::json;

namespace
{
    struct Run
    {
        int code;
        std::string out, err;
    };

    Run run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "ris_sim");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = parse_and_run(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    fs::path scratch(const std::string &name)
    {
        const fs::path p = fs::temp_directory_path() / ("ris_sim_test_" + name);
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream f(p);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    void write(const fs::path &p, const std::string &text)
    {
        std::ofstream f(p);
        f << text;
    }

    std::vector<std::string> lines(const std::string &text)
    {
        std::vector<std::string> out;
        std::istringstream is(text);
        for (std::string l; std::getline(is, l);)
            out.push_back(l);
        return out;
    }

    const char *small_profile = R"({
        "ris": {"m_h": 8, "m_v": 8},
        "bs": {"n": 4},
        "experiment": {"trials": 3, "rho_dbm": [0, 20]}
    })";
}

TEST_CASE("basis subcommand", "[cli]")
{
    const auto dir = scratch("basis");
    const auto r = run({"basis", "--m-h", "8", "--m-v", "8", "--d", "0.25", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto csv = lines(slurp(dir / "basis.csv"));
    REQUIRE(csv.size() == 16);
    CHECK(csv[0] == "index,azimuth_rad,elevation_rad,k,l");

    const auto meta = json::parse(slurp(dir / "basis.meta.json"));
    CHECK(meta["tool"] == "ris_sim");
    CHECK(meta["subcommand"] == "basis");
    CHECK(meta["config"]["ris"]["m_h"] == 8);
    CHECK(meta["config"]["ris"]["d_v"] == 0.25);
    CHECK(meta["config_digest"].get<std::string>().size() == 16);
    CHECK(meta.contains("version"));
    CHECK(meta.contains("master_seed"));

    const auto rect = run({"basis", "--m-h", "4", "--m-v", "8", "--d-h", "0.5", "--d-v", "0.25", "--out", dir.string()});
    CHECK(rect.code == 0);
    CHECK(run({"basis", "--m-h", "0", "--out", dir.string()}).code == 2);
}

TEST_CASE("dof-table subcommand", "[cli]")
{
    const auto dir = scratch("dof");
    const auto r = run({"dof-table", "--out", dir.string()});
    REQUIRE(r.code == 0);
    bool found = false;
    for (const auto &l : lines(slurp(dir / "dof_table.csv")))
        if (l.rfind("128,0.25,", 0) == 0)
        {
            found = true;
            std::istringstream row(l);
            std::vector<std::string> f;
            for (std::string x; std::getline(row, x, ',');)
                f.push_back(x);
            REQUIRE(f.size() == 5);
            CHECK(std::stod(f[3]) > 0.196);
            CHECK(std::stod(f[3]) < 0.200);
        }
    CHECK(found);
}

TEST_CASE("config errors exit with code 2 and name the key", "[cli]")
{
    const auto dir = scratch("errors");
    SECTION("missing file")
    {
        const std::string missing = (dir / "missing.json").string();
        const auto r = run({"nmse-sweep", "--config", missing, "--out", dir.string()});
        CHECK(r.code == 2);
        CHECK(r.err.find(missing) != std::string::npos);
    }
    SECTION("negative distance range")
    {
        const auto r = run({"trial", "--set", "user.distance_m=[-10, 20]", "--out", dir.string()});
        CHECK(r.code == 2);
        CHECK(r.err.find("user.distance_m") != std::string::npos);
    }
    SECTION("unknown key in the file")
    {
        write(dir / "bad.json", R"({"experiment": {"trails": 5}})");
        const auto r = run({"trial", "--config", (dir / "bad.json").string(), "--out", dir.string()});
        CHECK(r.code == 2);
        CHECK(r.err.find("experiment.trails") != std::string::npos);
    }
    SECTION("malformed JSON")
    {
        write(dir / "broken.json", "{ not json");
        CHECK(run({"trial", "--config", (dir / "broken.json").string(), "--out", dir.string()}).code == 2);
    }
    SECTION("usage errors")
    {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"trial", "--bogus"}).code == 2);
        CHECK(run({"--help"}).code == 0);
    }
}

TEST_CASE("runtime failures exit with code 1", "[cli]")
{
    const auto dir = scratch("runtime");
    write(dir / "file", "occupied");
    const auto r = run({"basis", "--m-h", "4", "--m-v", "4", "--out", (dir / "file" / "sub").string()});
    CHECK(r.code == 1);
    CHECK(!r.err.empty());
}

TEST_CASE("config loading", "[cli]")
{
    const auto dir = scratch("load");
    SECTION("empty object yields the full default profile")
    {
        write(dir / "empty.json", "{}");
        const auto c = load_config(dir / "empty.json");
        CHECK(config_to_json(c) == config_to_json(ScenarioConfig{}));
        CHECK(c.ris.m_h == 128);
        CHECK(c.bs.n == 128);
        CHECK(c.budget.carrier_hz == 28e9);
        CHECK(c.budget.noise_dbm == -96.0);
        CHECK(c.trials == 500);
        CHECK(c.user.distance_m == Range{30.0, 50.0});
    }
    SECTION("overrides win over the file")
    {
        write(dir / "t.json", R"({"experiment": {"trials": 40}})");
        CHECK(load_config(dir / "t.json").trials == 40);
        CHECK(load_config(dir / "t.json", {"trials=10"}).trials == 10);
        CHECK(load_config(dir / "t.json", {"experiment.trials=11"}).trials == 11);
        CHECK(load_config(dir / "t.json", {"rho_dbm=[1,2]"}).rho_dbm == std::vector<double>{1.0, 2.0});
    }
    SECTION("override errors")
    {
        CHECK_THROWS_AS(load_config(std::vector<std::string>{"m_h=4"}), ConfigError); // ambiguous
        CHECK_THROWS_AS(load_config(std::vector<std::string>{"nothing=4"}), ConfigError);
        CHECK_THROWS_AS(load_config(std::vector<std::string>{"ris.nothing=4"}), ConfigError);
        CHECK_THROWS_AS(load_config(std::vector<std::string>{"trials"}), ConfigError);
        CHECK_THROWS_AS(load_config(std::vector<std::string>{"trials=abc"}), ConfigError);
        CHECK_THROWS_AS(load_config(std::vector<std::string>{"trials=0"}), ConfigError);
        try
        {
            load_config(std::vector<std::string>{"ris.d_h=3"});
            FAIL("expected a ConfigError");
        }
        catch (const ConfigError &e)
        {
            CHECK(e.key() == "ris");
        }
    }
    SECTION("JSON round trip")
    {
        ScenarioConfig c;
        c.trials = 7;
        c.rho_dbm = {1.5, 2.5};
        c.user.azimuth = {-0.5, 0.25};
        c.eigen.spacings = {0.5};
        const auto back = config_from_json(config_to_json(c));
        CHECK(config_to_json(back) == config_to_json(c));
        CHECK(config_digest(back) == config_digest(c));
        auto w = c;
        w.workers = 5;
        CHECK(config_digest(w) == config_digest(c));
        w.master_seed = 1;
        CHECK(config_digest(w) != config_digest(c));
    }
}

TEST_CASE("sidecar round trip reproduces the outputs", "[cli]")
{
    const auto dir = scratch("roundtrip");
    write(dir / "small.json", small_profile);
    const auto first = dir / "first";
    const auto second = dir / "second";
    REQUIRE(run({"nmse-sweep", "--config", (dir / "small.json").string(), "--seed", "17", "--out", first.string()})
                .code == 0);
    REQUIRE(run({"nmse-sweep", "--config", (first / "nmse_sweep.meta.json").string(), "--out", second.string()})
                .code == 0);
    CHECK(slurp(first / "nmse_sweep.csv") == slurp(second / "nmse_sweep.csv"));
    CHECK(slurp(first / "nmse_sweep.meta.json") == slurp(second / "nmse_sweep.meta.json"));
    const auto meta = json::parse(slurp(first / "nmse_sweep.meta.json"));
    CHECK(meta["master_seed"] == 17);
    CHECK(lines(slurp(first / "nmse_sweep.csv")).size() == 1 + 2 * 2);
}

TEST_CASE("sweep, trial and eigen subcommands", "[cli]")
{
    const auto dir = scratch("subcommands");
    write(dir / "small.json", small_profile);
    const std::string cfg = (dir / "small.json").string();

    REQUIRE(run({"snr-sweep", "--config", cfg, "--threads", "2", "--out", dir.string()}).code == 0);
    CHECK(lines(slurp(dir / "snr_sweep.csv")).size() == 1 + 2 * 3 * 2);

    REQUIRE(run({"trial", "--config", cfg, "--rho-dbm", "5", "--index", "2", "--out", dir.string()}).code == 0);
    const auto t = lines(slurp(dir / "trial.csv"));
    REQUIRE(t.size() == 2);
    CHECK(t[1].rfind("2,5,", 0) == 0);

    REQUIRE(run({"eigen", "--set", "eigen.m_h=4", "--set", "eigen.m_v=4", "--set", "eigen.n_samples=500", "--out",
                 dir.string()})
                .code == 0);
    CHECK(lines(slurp(dir / "eigen.csv")).size() == 1 + 2 * 16);
}

TEST_CASE("worker resolution honours RIS_SIM_THREADS", "[cli]")
{
    ::setenv("RIS_SIM_THREADS", "2", 1);
    CHECK(resolve_workers(8) == 2);
    CHECK(resolve_workers(1) == 1);
    CHECK(resolve_workers(0) <= 2);
    ::unsetenv("RIS_SIM_THREADS");
    CHECK(resolve_workers(3) == 3);
    CHECK(resolve_workers(0) >= 1);

    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits)
        CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i)
                                 {
                                     if (i == 5)
                                         throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
