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

#ifndef CVISAC_BASELINES_HPP
#define CVISAC_BASELINES_HPP

#include <optional>
#include <string>
#include <vector>

#include "cvisac/ddpg.hpp"
#include "cvisac/environment.hpp"

// Comparison policies and the evaluation harness. Every policy, fixed-RAT or
// not, is scored through the same environment evaluation path.

namespace cvisac {

// Adapts the simulator environment to the trainer's raw-action interface.
class SimEnv : public EnvBase {
  public:
    SimEnv(Scenario sc, std::uint64_t seed) : env_(std::move(sc), seed) {}

    std::size_t state_dim() const override { return env_.state_dim(); }
    std::size_t action_dim() const override { return env_.action_dim(); }
    std::size_t n_users() const override { return env_.scenario().n_users; }

    std::vector<double> reset() override { return env_.reset(); }

    Out step_raw(std::span<const double> raw) override {
        const StepResult r = env_.step(env_.decode(raw));
        return {r.state, r.reward, r.done, r.metrics.mi, r.metrics.feasible,
                r.metrics.sum_rate};
    }

    Environment& env() { return env_; }

  private:
    Environment env_;
};

enum class PolicyKind { proposed, random_rat, all_mmwave, all_lte };

std::string policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(const std::string& name);
RatClamp clamp_for(PolicyKind kind);

struct BaselineOptions {
    bool matched_filter = false;  // skip training, use matched-filter beams
    std::size_t eval_episodes = 10;
};

struct EvalRecord {
    PolicyKind kind = PolicyKind::proposed;
    std::size_t n_users = 0;
    std::size_t episodes = 0;
    double mean_rate = 0;   // bits/s, averaged over evaluated slots
    double std_rate = 0;    // across episodes
    double mean_mi = 0;     // bits
    double mean_reward = 0;
    double feasible_frac = 0;
};

// Trains (unless matched_filter) and evaluates one policy on the scenario.
// Fixed-RAT policies run the same agent machinery with the RAT slice of the
// action clamped during training and evaluation.
EvalRecord run_baseline(PolicyKind kind, const Scenario& sc,
                        const Hyperparams& hp, std::uint64_t seed,
                        const BaselineOptions& opts);

// Evaluates a frozen agent (or matched-filter policy when agent == nullptr)
// without exploration noise.
EvalRecord evaluate_policy(PolicyKind kind, const Agent* agent,
                           const Scenario& sc, std::uint64_t seed,
                           std::size_t episodes);

struct SweepRow {
    std::size_t n_users;
    PolicyKind kind;
    double mean_rate;  // over seeds of per-seed means
    double std_rate;   // over seeds
    double mean_mi;
};

// Full factorial (N x policy x seed) evaluation, aggregated over seeds.
// Cells are independent; `threads` > 1 runs them concurrently with per-cell
// substreams, so the output is identical either way.
std::vector<SweepRow> sweep_users(const std::vector<PolicyKind>& kinds,
                                  const std::vector<std::size_t>& n_list,
                                  const Scenario& base, const Hyperparams& hp,
                                  std::uint64_t base_seed, std::size_t n_seeds,
                                  const BaselineOptions& opts,
                                  std::size_t threads = 1);

// Per-cell records (one per N x policy x seed) for callers that need the
// unaggregated surface.
std::vector<EvalRecord> sweep_users_cells(
    const std::vector<PolicyKind>& kinds,
    const std::vector<std::size_t>& n_list, const Scenario& base,
    const Hyperparams& hp, std::uint64_t base_seed, std::size_t n_seeds,
    const BaselineOptions& opts, std::size_t threads = 1);

// Rebuilds a scenario for a different user count, rescaling the per-user
// bandwidth share from the same total.
Scenario scenario_with_users(const Scenario& base, std::size_t n_users);

}  // namespace cvisac

#endif  // CVISAC_BASELINES_HPP
