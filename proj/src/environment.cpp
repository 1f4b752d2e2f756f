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

#include "cvisac/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvisac {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPenalty = -100.0;
}  // namespace

void Scenario::validate() const {
    if (n_users < 1) throw std::invalid_argument("scenario: n_users must be >= 1");
    if (n_antennas < 1) throw std::invalid_argument("scenario: n_antennas must be >= 1");
    if (p_max <= 0) throw std::invalid_argument("scenario: p_max must be > 0");
    if (mi_min < 0) throw std::invalid_argument("scenario: mi_min must be >= 0");
    if (p_block < 0 || p_block > 1)
        throw std::invalid_argument("scenario: p_block must be in [0,1]");
    if (coverage_radius <= 0)
        throw std::invalid_argument("scenario: coverage_radius must be > 0");
    if (cell_radius <= 0) throw std::invalid_argument("scenario: cell_radius must be > 0");
    if (episode_slots < 1)
        throw std::invalid_argument("scenario: episode_slots must be >= 1");
    if (n_classes < 1) throw std::invalid_argument("scenario: n_classes must be >= 1");
    if (activity_table.size() != static_cast<std::size_t>(n_classes))
        throw std::invalid_argument("scenario: activity_table size != n_classes");
    if (target_height <= 0)
        throw std::invalid_argument("scenario: target_height must be > 0");
    if (camera.focal_length <= 0)
        throw std::invalid_argument("scenario: focal_length must be > 0");
    if (radar_sigma < 0) throw std::invalid_argument("scenario: radar_sigma must be >= 0");
    if (nlos_mm_loss_db < 0)
        throw std::invalid_argument("scenario: nlos_mm_loss_db must be >= 0");
    if (mm.antennas != n_antennas || lte.antennas != n_antennas)
        throw std::invalid_argument("scenario: per-RAT antenna counts must equal n_antennas");
    if (sensing.antennas != n_antennas)
        throw std::invalid_argument("scenario: sensing antenna count must equal n_antennas");
    mm.validate();
    lte.validate();
    sensing.validate();
}

Scenario make_default_scenario() {
    Scenario sc;
    sc.mm.antennas = sc.n_antennas;
    sc.mm.n_paths = 5;
    sc.mm.wavelength = 0.002;
    sc.mm.antenna_spacing = sc.mm.wavelength / 2.0;
    sc.mm.bandwidth = sc.bandwidth_total / static_cast<double>(sc.n_users);
    sc.lte = sc.mm;
    sc.lte.n_paths = 9;
    sc.lte.wavelength = 0.1;
    sc.lte.antenna_spacing = sc.lte.wavelength / 2.0;
    sc.sensing.antennas = sc.n_antennas;
    sc.sensing.wavelength = sc.mm.wavelength;
    sc.sensing.antenna_spacing = sc.mm.antenna_spacing;
    sc.activity_table = default_activity_table(sc.n_classes);
    // Camera co-located with the BS, looking straight down on the cell.
    sc.camera.position = {0.0, 0.0, sc.bs_height};
    sc.camera.pitch = kPi;
    return sc;
}

Action decode_action(std::span<const double> raw, std::size_t n_users,
                     std::size_t n_antennas, double p_max) {
    const std::size_t expect = n_users + 2 * n_users * n_antennas;
    if (raw.size() != expect)
        throw std::invalid_argument("decode_action: raw length mismatch");

    Action act;
    act.x.resize(n_users);
    for (std::size_t n = 0; n < n_users; ++n) act.x[n] = raw[n] >= 0.5 ? 1 : 0;

    act.w = CMat(n_users, n_antennas);
    const double* p = raw.data() + n_users;
    for (std::size_t n = 0; n < n_users; ++n) {
        for (std::size_t m = 0; m < n_antennas; ++m) {
            const double re = 2.0 * p[0] - 1.0;
            const double im = 2.0 * p[1] - 1.0;
            act.w(n, m) = cplx{re, im};
            p += 2;
        }
    }

    const double power = frobenius_norm_sq(act.w);
    if (power > p_max) {
        act.w = act.w.scaled(std::sqrt(p_max / power));
    }
    return act;
}

std::pair<double, Metrics> evaluate_world(const Scenario& sc,
                                          const WorldState& world,
                                          const Action& action) {
    const std::size_t n = sc.n_users;
    if (action.x.size() != n || action.w.rows() != n ||
        action.w.cols() != sc.n_antennas)
        throw std::invalid_argument("evaluate_world: action dimensions mismatch");

    // Users the system failed to range cannot be scheduled on mmWave.
    std::vector<int> x = action.x;
    for (std::size_t i = 0; i < n; ++i)
        if (world.loc_failed[i]) x[i] = 0;

    Metrics me;
    me.rate.resize(n);
    me.used_mm.resize(n);
    me.rate_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const bool mm = x[i] != 0;
        me.used_mm[i] = mm;
        const auto& channels = mm ? world.h_mm : world.h_lte;
        const auto& params = mm ? sc.mm : sc.lte;
        const double gamma_db = sinr_db(i, channels, action.w, x, params,
                                        world.true_dist[i], sc.sinr);
        const double gamma = db_to_linear(gamma_db);
        me.rate[i] = mm ? rate_mmwave(gamma, params)
                        : rate_lte(gamma, params.bandwidth);
        if (me.rate[i] < world.min_rate[i]) me.rate_ok = false;
    }
    me.sum_rate = sum_rate(me.rate, x);

    SensingDiag diag;
    me.mi = sensing_mi(action.w, x, world.sigma_g, sc.sensing, &diag);
    me.mi_phase = diag.det_phase;
    me.mi_ok = me.mi >= sc.mi_min;

    me.feasible = me.rate_ok && me.mi_ok;
    const double reward = me.feasible ? me.sum_rate : kPenalty;
    return {reward, me};
}

Environment::Environment(Scenario sc, std::uint64_t seed)
    : scenario_(std::move(sc)), rng_(seed) {
    scenario_.validate();
    last_known_dist_.assign(scenario_.n_users, scenario_.cell_radius);
}

void Environment::localize_all() {
    const std::size_t n = scenario_.n_users;
    world_.est_dist.assign(n, 0.0);
    world_.loc_failed.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (world_.los[i] && world_.in_coverage[i]) {
            // mmWave radar branch
            double d = world_.true_dist[i];
            if (scenario_.radar_sigma > 0.0)
                d += rng_.gaussian(0.0, scenario_.radar_sigma);
            world_.est_dist[i] = std::max(d, 1e-6);
        } else if (world_.detected_activity[i] > 0) {
            // camera branch: invert the bounding box
            world_.est_dist[i] = est_dist_from_box_[i];
        } else {
            world_.loc_failed[i] = 1;
            world_.est_dist[i] = last_known_dist_[i];
        }
        last_known_dist_[i] = world_.est_dist[i];
    }
}

const std::vector<double>& Environment::reset() {
    const std::size_t n = scenario_.n_users;
    world_ = WorldState{};
    world_.positions.resize(n);
    world_.true_dist.resize(n);
    world_.los.resize(n);
    world_.in_coverage.resize(n);
    world_.activity.resize(n);
    world_.detected_activity.assign(n, 0);
    world_.min_rate.resize(n);
    world_.h_mm.resize(n);
    world_.h_lte.resize(n);
    est_dist_from_box_.assign(n, 0.0);

    const Vec3 bs{0.0, 0.0, scenario_.bs_height};
    std::vector<SceneUser> scene(n);
    for (std::size_t i = 0; i < n; ++i) {
        // uniform over the disc via sqrt radius
        const double r = scenario_.cell_radius * std::sqrt(rng_.uniform());
        const double ang = rng_.uniform(0.0, 2.0 * kPi);
        world_.positions[i] = {r * std::cos(ang), r * std::sin(ang), 0.0};
        world_.true_dist[i] = vnorm(world_.positions[i] - bs);
        world_.los[i] = rng_.bernoulli(1.0 - scenario_.p_block);
        world_.in_coverage[i] = world_.true_dist[i] <= scenario_.coverage_radius;
        world_.activity[i] =
            1 + static_cast<int>(rng_.uniform_index(
                    static_cast<std::uint64_t>(scenario_.n_classes)));
        scene[i] = {world_.positions[i], world_.activity[i]};
    }

    const auto detections =
        detect_activities(scene, scenario_.camera, scenario_.target_height,
                          scenario_.target_width, scenario_.n_classes,
                          scenario_.detection, rng_);
    for (std::size_t i = 0; i < n; ++i) {
        if (!detections[i].detected) continue;
        world_.detected_activity[i] = detections[i].activity;
        est_dist_from_box_[i] =
            estimate_distance(detections[i].box, scenario_.camera.focal_length,
                              scenario_.target_height);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const int cls = world_.detected_activity[i] > 0
                            ? world_.detected_activity[i]
                            : world_.activity[i];
        world_.min_rate[i] = min_rate_for_activity(cls, scenario_.activity_table);
    }

    localize_all();

    redraw_fading();
    world_.sigma_g = generate_sensing_channel(scenario_.sensing, rng_);
    world_.slot = 0;

    has_world_ = true;
    done_ = false;
    assemble_state();
    return state_;
}

void Environment::redraw_fading() {
    const double atten =
        std::pow(10.0, -scenario_.nlos_mm_loss_db / 20.0);  // amplitude factor
    for (std::size_t i = 0; i < scenario_.n_users; ++i) {
        world_.h_mm[i] = generate_channel(scenario_.mm, rng_);
        world_.h_lte[i] = generate_channel(scenario_.lte, rng_);
        if (!world_.los[i] && scenario_.nlos_mm_loss_db > 0.0) {
            CVec& h = world_.h_mm[i].h;
            for (std::size_t j = 0; j < h.size(); ++j) h[j] *= atten;
        }
    }
}

void Environment::assemble_state() {
    const std::size_t n = scenario_.n_users;
    const std::size_t m = scenario_.n_antennas;
    state_.assign(scenario_.state_dim(), 0.0);
    double* p = state_.data();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            *p++ = world_.h_mm[i].h[j].real();
            *p++ = world_.h_mm[i].h[j].imag();
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            *p++ = world_.h_lte[i].h[j].real();
            *p++ = world_.h_lte[i].h[j].imag();
        }
    // Remaining blocks are scaled into O(1) ranges for the agent.
    double rate_scale = 1.0;
    for (double r : scenario_.activity_table) rate_scale = std::max(rate_scale, r);
    for (std::size_t i = 0; i < n; ++i)
        *p++ = static_cast<double>(world_.detected_activity[i] > 0
                                       ? world_.detected_activity[i]
                                       : world_.activity[i]) /
               static_cast<double>(scenario_.n_classes);
    for (std::size_t i = 0; i < n; ++i)
        *p++ = world_.est_dist[i] / scenario_.cell_radius;
    for (std::size_t i = 0; i < n; ++i)
        *p++ = world_.min_rate[i] / rate_scale;
}

StepResult Environment::step(const Action& action) {
    if (!has_world_) throw std::logic_error("step: reset() has not been called");
    if (done_) throw std::logic_error("step: episode already terminated");

    StepResult out;
    std::tie(out.reward, out.metrics) = evaluate_world(scenario_, world_, action);

    // Fast fading redraws every slot; positions, activities, blockage and
    // the sensing channel hold for the episode.
    redraw_fading();
    ++world_.slot;
    done_ = world_.slot >= scenario_.episode_slots;
    assemble_state();
    out.state = state_;
    out.done = done_;
    return out;
}

double probe_mi_ceiling(const Scenario& sc, int samples, RandomStream& rng) {
    double best = 0.0;
    std::vector<double> raw(sc.action_dim());
    for (int s = 0; s < samples; ++s) {
        const CMat sigma = generate_sensing_channel(sc.sensing, rng);
        for (double& v : raw) v = rng.uniform();
        const Action a = decode_action(raw, sc.n_users, sc.n_antennas, sc.p_max);
        const double mi = sensing_mi(a.w, a.x, sigma, sc.sensing);
        best = std::max(best, mi);
    }
    return best;
}

}  // namespace cvisac
