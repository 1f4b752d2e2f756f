/* Copyright 2026 The cvisac authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "cvisac/config.hpp"

using namespace cvisac;
namespace fs = std::filesystem;

namespace {

fs::path write_tmp(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "cvisac_config_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

}  // namespace

TEST_CASE("empty config resolves to the built-in defaults") {
    const auto p = write_tmp("empty.cfg", "");
    const RunConfig cfg = parse_config(p.string());
    CHECK(cfg.scenario.n_users == 10);
    CHECK(cfg.scenario.n_antennas == 16);
    CHECK(cfg.scenario.mi_min == 90.0);
    CHECK(cfg.scenario.mm.wavelength == 0.002);
    CHECK(cfg.scenario.lte.wavelength == 0.1);
    CHECK(cfg.scenario.mm.n_paths == 5);
    CHECK(cfg.scenario.lte.n_paths == 9);
    CHECK(cfg.scenario.mm.symbols_per_slot == 14);
    CHECK(cfg.scenario.mm.channel_variance == 2.0);
    CHECK(cfg.scenario.sensing.rice_factor == 3.0);
    CHECK(cfg.hp.actor_lr == 0.001);
    CHECK(cfg.hp.critic_lr == 0.001);
    CHECK(cfg.hp.discount == 0.99);
    CHECK(cfg.hp.tau == 0.005);
    CHECK(cfg.hp.buffer_size == 10000);
    CHECK(cfg.hp.batch_size == 64);
    CHECK(cfg.hp.max_steps == 3000);
    CHECK(cfg.hp.noise == 0.2);
    // per-user bandwidth share of the configured total
    CHECK(cfg.scenario.mm.bandwidth == doctest::Approx(1e7));
    // half-wavelength spacing per RAT
    CHECK(cfg.scenario.mm.antenna_spacing == doctest::Approx(0.001));
    CHECK(cfg.scenario.lte.antenna_spacing == doctest::Approx(0.05));
    // no config file at all behaves the same
    const RunConfig cfg2 = parse_config("");
    CHECK(cfg2.scenario.n_users == 10);
}

TEST_CASE("unknown keys are hard errors that name the key") {
    const auto p = write_tmp("unknown.cfg", "foo = 1\n");
    try {
        parse_config(p.string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("foo") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("", {"nope.key=3"}), ConfigError);
}

TEST_CASE("file overrides defaults, flags override the file") {
    const auto p = write_tmp("layer.cfg",
                             "# comment\n"
                             "scenario.users = 4\n"
                             "ddpg.noise = 0.3\n");
    const RunConfig from_file = parse_config(p.string());
    CHECK(from_file.scenario.n_users == 4);
    CHECK(from_file.hp.noise == 0.3);
    CHECK(from_file.scenario.mm.bandwidth == doctest::Approx(2.5e7));

    const RunConfig flagged =
        parse_config(p.string(), {"scenario.users=5", "ddpg.noise=0.1"});
    CHECK(flagged.scenario.n_users == 5);
    CHECK(flagged.hp.noise == 0.1);
    CHECK(flagged.resolved.at("scenario.users") == "5");
}

TEST_CASE("parse errors carry the line number") {
    const auto p = write_tmp("broken.cfg", "scenario.users = 4\nnot an assignment\n");
    try {
        parse_config(p.string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("validation errors name the violated invariant") {
    try {
        parse_config("", {"channel.pilot_symbols=20"});  // >= symbols_per_slot
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("symbols_per_slot") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("", {"scenario.p_block=2"}), ConfigError);
    CHECK_THROWS_AS(parse_config("", {"ddpg.tau=0"}), ConfigError);
    CHECK_THROWS_AS(parse_config("", {"scenario.users=abc"}), ConfigError);
    CHECK_THROWS_AS(parse_config("", {"sinr.interference_exponent=3"}), ConfigError);
    CHECK_THROWS_AS(parse_config("", {"sweep.policies=bogus"}), ConfigError);
}

TEST_CASE("lists and auxiliary settings parse") {
    const RunConfig cfg = parse_config(
        "", {"sweep.users=4,6", "sweep.mi=10,20,30", "sweep.seeds=5",
             "sweep.policies=proposed,all_lte", "baselines.precoder=matched",
             "scenario.mi_min_frac=0.5", "runtime.threads=2"});
    CHECK(cfg.sweep_users_list == std::vector<std::size_t>{4, 6});
    CHECK(cfg.sweep_mi == std::vector<double>{10, 20, 30});
    CHECK(cfg.sweep_seeds == 5);
    REQUIRE(cfg.sweep_policies.size() == 2);
    CHECK(cfg.sweep_policies[0] == PolicyKind::proposed);
    CHECK(cfg.sweep_policies[1] == PolicyKind::all_lte);
    CHECK(cfg.baseline_opts.matched_filter);
    CHECK(cfg.mi_min_frac == 0.5);
    CHECK(cfg.threads == 2);
}

TEST_CASE("activity table path is honored") {
    const auto table = write_tmp("rates.txt", "1 = 42000000\n");
    const RunConfig cfg =
        parse_config("", {"scenario.activity_table=" + table.string()});
    CHECK(cfg.scenario.activity_table[0] == doctest::Approx(4.2e7));
    CHECK_THROWS_AS(parse_config("", {"scenario.activity_table=/no/such/file"}),
                    ConfigError);
}

TEST_CASE("unused settings are carried through for provenance") {
    const RunConfig cfg = parse_config("", {"sensing.rcs=64"});
    CHECK(cfg.resolved.at("sensing.rcs") == "64");
    CHECK(cfg.resolved.count("sensing.symbol_time") == 1);
    CHECK(cfg.resolved.count("sensing.rms_bandwidth_factor") == 1);
}
