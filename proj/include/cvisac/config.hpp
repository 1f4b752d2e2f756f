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

#ifndef CVISAC_CONFIG_HPP
#define CVISAC_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvisac/baselines.hpp"
#include "cvisac/ddpg.hpp"
#include "cvisac/environment.hpp"

// Flat `key = value` configuration with dotted namespaces. Resolution is
// layered: built-in defaults, then the config file, then --set overrides.
// Unknown keys are hard errors, and every resolved value is echoed into the
// run's metadata for provenance.

namespace cvisac {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Scenario scenario;
    Hyperparams hp;
    BaselineOptions baseline_opts;

    // mi_min derivation: when mi_min_frac > 0 the runner replaces
    // scenario.mi_min with frac * probe ceiling before running.
    double mi_min_frac = 0.0;
    std::size_t probe_samples = 10000;

    std::vector<double> sweep_mi;        // absolute MI thresholds
    std::vector<double> sweep_mi_frac;   // fractions of the probe ceiling
    std::vector<std::size_t> sweep_users_list;
    std::vector<PolicyKind> sweep_policies;
    std::size_t sweep_seeds = 3;

    PolicyKind eval_policy = PolicyKind::proposed;
    std::string eval_checkpoint;

    std::size_t threads = 0;  // 0 = hardware concurrency
    bool plot = true;

    // resolved key -> value strings, for the metadata echo
    std::map<std::string, std::string> resolved;
};

// Parses and validates. `path` may be empty (defaults only); `overrides`
// holds "key=value" strings from the command line. Throws ConfigError with
// the offending key/line named.
RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides = {});

// All known keys with their built-in defaults, for documentation output.
const std::map<std::string, std::string>& config_defaults();

}  // namespace cvisac

#endif  // CVISAC_CONFIG_HPP
