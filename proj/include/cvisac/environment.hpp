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

#ifndef CVISAC_ENVIRONMENT_HPP
#define CVISAC_ENVIRONMENT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "cvisac/channel.hpp"
#include "cvisac/numerics.hpp"
#include "cvisac/rng.hpp"
#include "cvisac/sensing.hpp"
#include "cvisac/vision.hpp"

// Episodic environment for the joint RAT-selection + precoding problem:
// reward is the sum rate when the per-user minimum-rate and sensing-MI
// constraints hold and a flat -100 otherwise; the transmit-power constraint
// is enforced by construction when actions are decoded.

namespace cvisac {

struct Scenario {
    std::size_t n_users = 10;
    std::size_t n_antennas = 16;
    ChannelParams mm;
    ChannelParams lte;
    SensingConfig sensing;
    SinrOptions sinr;

    double p_max = 1.0;    // W, ||W||_F^2 budget
    double mi_min = 90.0;  // bits
    double bandwidth_total = 1e8;  // Hz, split evenly across users
    // Extra mmWave link loss for blocked (NLoS) users, dB. Applied to the
    // user's mmWave channel realization, so it is visible in the agent's
    // state. 0 disables the effect.
    double nlos_mm_loss_db = 0.0;
    double p_block = 0.2;  // per-user NLoS probability per episode
    double coverage_radius = 100.0;  // mmWave radar reach, m
    double cell_radius = 100.0;      // user placement disc, m
    double bs_height = 10.0;         // m
    std::size_t episode_slots = 50;

    int n_classes = 60;
    std::vector<double> activity_table;  // size n_classes

    CameraPose camera;  // defaults to straight-down at the BS position
    double target_height = 1.7;  // m
    double target_width = 0.5;   // m
    DetectionNoise detection;
    double radar_sigma = 0.0;  // Gaussian ranging noise, m

    void validate() const;
    std::size_t state_dim() const { return 4 * n_users * n_antennas + 3 * n_users; }
    std::size_t action_dim() const { return n_users + 2 * n_users * n_antennas; }
};

// Returns the scenario defaults above with camera/channel fields that depend
// on other fields resolved (half-wavelength spacing, camera at the BS).
Scenario make_default_scenario();

struct Action {
    std::vector<int> x;  // RAT indicator per user, 1 = mmWave
    CMat w;              // N x M precoding matrix, row n = w_n
};

// Maps a raw agent output in [0,1]^(N + 2NM) to an Action:
// x_n = raw_n >= 0.5; remaining entries map affinely to [-1,1] and pair into
// Re/Im of W row-major; W is rescaled onto the power sphere whenever
// ||W||_F^2 exceeds p_max. Throws std::invalid_argument on length mismatch.
Action decode_action(std::span<const double> raw, std::size_t n_users,
                     std::size_t n_antennas, double p_max);

// Per-episode ground truth.
struct WorldState {
    std::vector<Vec3> positions;
    std::vector<double> true_dist;   // to the BS antenna
    std::vector<uint8_t> los;
    std::vector<uint8_t> in_coverage;
    std::vector<uint8_t> loc_failed;  // neither radar nor camera could range
    std::vector<int> activity;        // ground truth classes
    std::vector<int> detected_activity;
    std::vector<double> est_dist;   // what the state exposes
    std::vector<double> min_rate;   // from detected activity
    std::vector<UserChannel> h_mm;
    std::vector<UserChannel> h_lte;
    CMat sigma_g;
    std::size_t slot = 0;
};

struct Metrics {
    std::vector<double> rate;      // per user, bits/s
    std::vector<uint8_t> used_mm;  // RAT actually used per user
    double sum_rate = 0;
    double mi = 0;
    bool rate_ok = false;
    bool mi_ok = false;
    bool feasible = false;
    double mi_phase = 0;
};

// Pure evaluation of an action against a world (Eq. of the objective plus
// the penalty rule). Exposed separately so property tests can drive it with
// hand-built worlds.
std::pair<double, Metrics> evaluate_world(const Scenario& sc,
                                          const WorldState& world,
                                          const Action& action);

struct StepResult {
    std::vector<double> state;
    double reward = 0;
    Metrics metrics;
    bool done = false;
};

class Environment {
  public:
    Environment(Scenario sc, std::uint64_t seed);

    const std::vector<double>& reset();
    StepResult step(const Action& action);  // throws if the episode is over

    std::size_t state_dim() const { return scenario_.state_dim(); }
    std::size_t action_dim() const { return scenario_.action_dim(); }
    const Scenario& scenario() const { return scenario_; }
    const WorldState& world() const { return world_; }
    const std::vector<double>& state() const { return state_; }
    bool done() const { return done_; }

    Action decode(std::span<const double> raw) const {
        return decode_action(raw, scenario_.n_users, scenario_.n_antennas,
                             scenario_.p_max);
    }

  private:
    void assemble_state();
    void localize_all();
    void redraw_fading();

    Scenario scenario_;
    RandomStream rng_;
    WorldState world_;
    std::vector<double> state_;
    std::vector<double> last_known_dist_;
    std::vector<double> est_dist_from_box_;
    bool has_world_ = false;
    bool done_ = true;
};

// Highest sensing MI found over `samples` uniformly drawn power-feasible
// actions, each against a freshly drawn sensing channel. Used to derive
// feasible MI thresholds for small scenarios.
double probe_mi_ceiling(const Scenario& sc, int samples, RandomStream& rng);

}  // namespace cvisac

#endif  // CVISAC_ENVIRONMENT_HPP
