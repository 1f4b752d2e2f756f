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

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "cvisac/kernels.hpp"
#include "cvisac/runner.hpp"

// Exit codes: 0 success, 1 configuration error, 2 runtime error.

int main(int argc, char** argv) {
    CLI::App app{"cvisac: camera-aided ISAC link simulator and optimizer"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::vector<std::string> overrides;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (key = value lines)");
        cmd->add_option("--seed", seed, "base random seed");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--set", overrides,
                        "override a config key, e.g. --set scenario.users=4");
    };

    CLI::App* cmd_train = app.add_subcommand("train", "train one agent, emit curve.csv");
    CLI::App* cmd_eval =
        app.add_subcommand("evaluate", "evaluate a policy without training");
    CLI::App* cmd_sweep_mi = app.add_subcommand(
        "sweep-mi", "train across MI thresholds, emit per-run curves");
    CLI::App* cmd_sweep_users = app.add_subcommand(
        "sweep-users", "policy x user-count evaluation grid, emit sweep.csv");
    for (CLI::App* c : {cmd_train, cmd_eval, cmd_sweep_mi, cmd_sweep_users})
        add_common(c);

    CLI11_PARSE(app, argc, argv);

    cvisac::RunMode mode = cvisac::RunMode::train;
    if (cmd_eval->parsed()) mode = cvisac::RunMode::evaluate;
    if (cmd_sweep_mi->parsed()) mode = cvisac::RunMode::sweep_mi;
    if (cmd_sweep_users->parsed()) mode = cvisac::RunMode::sweep_users;

    try {
        cvisac::RunConfig cfg = cvisac::parse_config(config_path, overrides);
        std::clog << "cvisac: kernels backend: "
                  << cvisac::kern::backend_name(cvisac::kern::active()) << "\n";
        return cvisac::run_mode(mode, std::move(cfg), seed, out_dir);
    } catch (const cvisac::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
