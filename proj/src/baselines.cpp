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

#include "cvisac/baselines.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace cvisac {

std::string policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::proposed: return "proposed";
        case PolicyKind::random_rat: return "random_rat";
        case PolicyKind::all_mmwave: return "all_mmwave";
        case PolicyKind::all_lte: return "all_lte";
    }
    return "unknown";
}

std::optional<PolicyKind> parse_policy(const std::string& name) {
    if (name == "proposed") return PolicyKind::proposed;
    if (name == "random_rat") return PolicyKind::random_rat;
    if (name == "all_mmwave") return PolicyKind::all_mmwave;
    if (name == "all_lte") return PolicyKind::all_lte;
    return std::nullopt;
}

RatClamp clamp_for(PolicyKind kind) {
    RatClamp clamp;
    switch (kind) {
        case PolicyKind::proposed: clamp.mode = RatClamp::Mode::none; break;
        case PolicyKind::random_rat:
            clamp.mode = RatClamp::Mode::random_per_episode;
            break;
        case PolicyKind::all_mmwave: clamp.mode = RatClamp::Mode::all_mmwave; break;
        case PolicyKind::all_lte: clamp.mode = RatClamp::Mode::all_lte; break;
    }
    return clamp;
}

namespace {

// Matched-filter precoder: each row points along the user's own channel for
// the RAT it is on, with an even power split summing to p_max.
Action matched_filter_action(const Environment& env,
                             const std::vector<int>& x) {
    const Scenario& sc = env.scenario();
    const WorldState& w = env.world();
    Action act;
    act.x = x;
    act.w = CMat(sc.n_users, sc.n_antennas);
    const double share = std::sqrt(sc.p_max / static_cast<double>(sc.n_users));
    for (std::size_t i = 0; i < sc.n_users; ++i) {
        const CVec& h = x[i] != 0 ? w.h_mm[i].h : w.h_lte[i].h;
        const double norm = std::sqrt(h.norm_sq());
        if (norm == 0.0) continue;
        for (std::size_t j = 0; j < sc.n_antennas; ++j)
            act.w(i, j) = h[j] * (share / norm);
    }
    return act;
}

std::vector<int> clamp_bits(const RatClamp& clamp, std::size_t n) {
    std::vector<int> x(n, 0);
    switch (clamp.mode) {
        case RatClamp::Mode::all_mmwave: x.assign(n, 1); break;
        case RatClamp::Mode::all_lte: x.assign(n, 0); break;
        case RatClamp::Mode::random_per_episode:
            for (std::size_t i = 0; i < n; ++i)
                x[i] = clamp.bits[i] >= 0.5 ? 1 : 0;
            break;
        case RatClamp::Mode::none: break;
    }
    return x;
}

}  // namespace

EvalRecord evaluate_policy(PolicyKind kind, const Agent* agent,
                           const Scenario& sc, std::uint64_t seed,
                           std::size_t episodes) {
    if (episodes == 0)
        throw std::invalid_argument("evaluate_policy: episodes must be >= 1");
    Environment env(sc, seed);
    RandomStream clamp_rng = RandomStream::substream(seed, 0x31);
    RatClamp clamp = clamp_for(kind);

    EvalRecord rec;
    rec.kind = kind;
    rec.n_users = sc.n_users;
    rec.episodes = episodes;

    std::vector<double> ep_rate(episodes, 0.0);
    double mi_total = 0.0, reward_total = 0.0, feasible = 0.0;
    std::size_t slots_total = 0;

    for (std::size_t e = 0; e < episodes; ++e) {
        std::vector<double> state = env.reset();
        if (clamp.mode == RatClamp::Mode::random_per_episode)
            clamp.resample(sc.n_users, clamp_rng);
        double ep_sum = 0.0;
        std::size_t slots = 0;
        bool done = false;
        while (!done) {
            Action action;
            if (agent != nullptr) {
                std::vector<double> raw = agent->act(state);
                clamp.apply(raw, sc.n_users);
                action = env.decode(raw);
            } else {
                action = matched_filter_action(env, clamp_bits(clamp, sc.n_users));
            }
            const StepResult r = env.step(action);
            ep_sum += r.metrics.sum_rate;
            mi_total += r.metrics.mi;
            reward_total += r.reward;
            feasible += r.metrics.feasible ? 1.0 : 0.0;
            state = r.state;
            done = r.done;
            ++slots;
        }
        ep_rate[e] = ep_sum / static_cast<double>(slots);
        slots_total += slots;
    }

    double mean = 0.0;
    for (double r : ep_rate) mean += r;
    mean /= static_cast<double>(episodes);
    double var = 0.0;
    for (double r : ep_rate) var += (r - mean) * (r - mean);
    rec.mean_rate = mean;
    rec.std_rate = episodes > 1 ? std::sqrt(var / static_cast<double>(episodes - 1)) : 0.0;
    rec.mean_mi = mi_total / static_cast<double>(slots_total);
    rec.mean_reward = reward_total / static_cast<double>(slots_total);
    rec.feasible_frac = feasible / static_cast<double>(slots_total);
    return rec;
}

EvalRecord run_baseline(PolicyKind kind, const Scenario& sc,
                        const Hyperparams& hp, std::uint64_t seed,
                        const BaselineOptions& opts) {
    if (opts.matched_filter) {
        return evaluate_policy(kind, nullptr, sc, seed, opts.eval_episodes);
    }
    SimEnv env(sc, RandomStream::substream(seed, 0x41).raw());
    Agent agent(env.state_dim(), env.action_dim(), hp, seed);
    train(env, agent, hp, seed, clamp_for(kind));
    return evaluate_policy(kind, &agent, sc,
                           RandomStream::substream(seed, 0x42).raw(),
                           opts.eval_episodes);
}

Scenario scenario_with_users(const Scenario& base, std::size_t n_users) {
    Scenario sc = base;
    sc.n_users = n_users;
    const double share = sc.bandwidth_total / static_cast<double>(n_users);
    sc.mm.bandwidth = share;
    sc.lte.bandwidth = share;
    return sc;
}

std::vector<EvalRecord> sweep_users_cells(
    const std::vector<PolicyKind>& kinds,
    const std::vector<std::size_t>& n_list, const Scenario& base,
    const Hyperparams& hp, std::uint64_t base_seed, std::size_t n_seeds,
    const BaselineOptions& opts, std::size_t threads) {
    if (n_seeds == 0) throw std::invalid_argument("sweep_users: need >= 1 seed");

    struct Cell {
        std::size_t n;
        PolicyKind kind;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    std::uint64_t cell_id = 0;
    for (std::size_t n : n_list)
        for (PolicyKind kind : kinds)
            for (std::size_t s = 0; s < n_seeds; ++s)
                cells.push_back({n, kind,
                                 RandomStream::substream(base_seed + s, ++cell_id)
                                     .raw()});

    std::vector<EvalRecord> records(cells.size());
    const auto run_cell = [&](std::size_t i) {
        const Cell& c = cells[i];
        records[i] = run_baseline(c.kind, scenario_with_users(base, c.n), hp,
                                  c.seed, opts);
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::size_t next = 0;
        while (next < cells.size()) {
            const std::size_t batch =
                std::min(threads, cells.size() - next);
            std::vector<std::future<void>> futs;
            futs.reserve(batch);
            for (std::size_t j = 0; j < batch; ++j)
                futs.push_back(std::async(std::launch::async, run_cell, next + j));
            for (auto& f : futs) f.get();
            next += batch;
        }
    }
    return records;
}

std::vector<SweepRow> sweep_users(const std::vector<PolicyKind>& kinds,
                                  const std::vector<std::size_t>& n_list,
                                  const Scenario& base, const Hyperparams& hp,
                                  std::uint64_t base_seed, std::size_t n_seeds,
                                  const BaselineOptions& opts,
                                  std::size_t threads) {
    const auto records = sweep_users_cells(kinds, n_list, base, hp, base_seed,
                                           n_seeds, opts, threads);
    std::vector<SweepRow> rows;
    for (std::size_t n : n_list) {
        for (PolicyKind kind : kinds) {
            std::vector<double> rates, mis;
            for (const EvalRecord& r : records)
                if (r.n_users == n && r.kind == kind) {
                    rates.push_back(r.mean_rate);
                    mis.push_back(r.mean_mi);
                }
            double mean = 0.0, mi = 0.0;
            for (std::size_t i = 0; i < rates.size(); ++i) {
                mean += rates[i];
                mi += mis[i];
            }
            mean /= static_cast<double>(rates.size());
            mi /= static_cast<double>(rates.size());
            double var = 0.0;
            for (double r : rates) var += (r - mean) * (r - mean);
            const double sd = rates.size() > 1
                                  ? std::sqrt(var / static_cast<double>(rates.size() - 1))
                                  : 0.0;
            rows.push_back({n, kind, mean, sd, mi});
        }
    }
    return rows;
}

}  // namespace cvisac
