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

#include "cvisac/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "cvisac/plot.hpp"

namespace cvisac {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Writes to `<path>.partial`, renames into place on success so an aborted
// run never leaves a truncated result file under the final name.
void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path partial = path.string() + ".partial";
    {
        std::ofstream out(partial, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + partial.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + partial.string());
    }
    fs::rename(partial, path);
}

std::string curve_csv(const std::vector<StepRecord>& trace) {
    std::ostringstream out;
    out << "step,raw_reward,normalized_reward,MI,feasible_flag\n";
    for (const StepRecord& r : trace)
        out << r.step << ',' << num(r.raw_reward) << ',' << num(r.norm_reward)
            << ',' << num(r.mi) << ',' << r.feasible << '\n';
    return out.str();
}

std::string meta_text(const RunConfig& cfg, RunMode mode, std::uint64_t seed,
                      const std::vector<std::pair<std::string, std::string>>&
                          extra) {
    static const char* kModeNames[] = {"train", "evaluate", "sweep-mi",
                                       "sweep-users"};
    std::ostringstream out;
    out << "version = " << kVersion << "\n";
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(kVersion)));
    out << "version_hash = " << hash << "\n";
    out << "mode = " << kModeNames[static_cast<int>(mode)] << "\n";
    out << "seed = " << seed << "\n";
    for (const auto& [k, v] : extra) out << k << " = " << v << "\n";
    out << "\n# resolved configuration\n";
    for (const auto& [k, v] : cfg.resolved) out << k << " = " << v << "\n";
    return out.str();
}

// Resolves a probe-derived MI threshold when configured, and reports what
// was used either way.
double resolve_mi_min(RunConfig& cfg, std::uint64_t seed,
                      std::vector<std::pair<std::string, std::string>>& extra) {
    if (cfg.mi_min_frac > 0.0) {
        RandomStream rng = RandomStream::substream(seed, 0x51);
        const double ceiling = probe_mi_ceiling(
            cfg.scenario, static_cast<int>(cfg.probe_samples), rng);
        cfg.scenario.mi_min = cfg.mi_min_frac * ceiling;
        extra.emplace_back("probe_mi_ceiling", num(ceiling));
    }
    extra.emplace_back("resolved_mi_min", num(cfg.scenario.mi_min));
    return cfg.scenario.mi_min;
}

std::vector<double> smoothed(const std::vector<StepRecord>& trace, int window) {
    std::vector<double> out(trace.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        acc += trace[i].raw_reward;
        if (i >= static_cast<std::size_t>(window))
            acc -= trace[i - window].raw_reward;
        out[i] = acc / static_cast<double>(std::min<std::size_t>(i + 1, window));
    }
    return out;
}

int run_train(RunConfig& cfg, std::uint64_t seed, const fs::path& out_dir) {
    std::vector<std::pair<std::string, std::string>> extra;
    resolve_mi_min(cfg, seed, extra);

    SimEnv env(cfg.scenario, RandomStream::substream(seed, 0x61).raw());
    Agent agent(env.state_dim(), env.action_dim(), cfg.hp, seed);
    const TrainResult res =
        train(env, agent, cfg.hp, seed, clamp_for(cfg.eval_policy));

    write_file_atomic(out_dir / "curve.csv", curve_csv(res.trace));
    agent.save((out_dir / "agent.ckpt").string());
    extra.emplace_back("policy", policy_name(cfg.eval_policy));
    extra.emplace_back("reward_scale", num(res.final_reward_scale));
    write_file_atomic(out_dir / "meta.txt", meta_text(cfg, RunMode::train, seed, extra));

    if (cfg.plot) {
        PlotSeries s{"reward (smoothed)", {}, {}};
        const auto sm = smoothed(res.trace, 25);
        for (std::size_t i = 0; i < res.trace.size(); ++i) {
            s.x.push_back(static_cast<double>(res.trace[i].step));
            s.y.push_back(sm[i]);
        }
        write_file_atomic(out_dir / "plot.svg",
                          render_svg_lines("training reward", "step", "reward", {s}));
    }
    return 0;
}

int run_evaluate(RunConfig& cfg, std::uint64_t seed, const fs::path& out_dir) {
    std::vector<std::pair<std::string, std::string>> extra;
    resolve_mi_min(cfg, seed, extra);

    EvalRecord rec;
    if (cfg.baseline_opts.matched_filter && cfg.eval_checkpoint.empty()) {
        rec = evaluate_policy(cfg.eval_policy, nullptr, cfg.scenario, seed,
                              cfg.baseline_opts.eval_episodes);
    } else {
        Agent agent =
            cfg.eval_checkpoint.empty()
                ? Agent(cfg.scenario.state_dim(), cfg.scenario.action_dim(),
                        cfg.hp, seed)  // untrained: random-weight policy
                : Agent::load(cfg.eval_checkpoint, cfg.hp);
        rec = evaluate_policy(cfg.eval_policy, &agent, cfg.scenario, seed,
                              cfg.baseline_opts.eval_episodes);
    }

    std::ostringstream csv;
    csv << "policy,N,episodes,mean_rate_bps,std_rate_bps,mean_MI_bits,"
           "mean_reward,feasible_frac\n";
    csv << policy_name(rec.kind) << ',' << rec.n_users << ',' << rec.episodes
        << ',' << num(rec.mean_rate) << ',' << num(rec.std_rate) << ','
        << num(rec.mean_mi) << ',' << num(rec.mean_reward) << ','
        << num(rec.feasible_frac) << '\n';
    write_file_atomic(out_dir / "eval.csv", csv.str());
    write_file_atomic(out_dir / "meta.txt",
                      meta_text(cfg, RunMode::evaluate, seed, extra));
    return 0;
}

int run_sweep_mi(RunConfig& cfg, std::uint64_t seed, const fs::path& out_dir) {
    std::vector<std::pair<std::string, std::string>> extra;

    std::vector<double> mi_values = cfg.sweep_mi;
    if (!cfg.sweep_mi_frac.empty()) {
        RandomStream rng = RandomStream::substream(seed, 0x51);
        const double ceiling = probe_mi_ceiling(
            cfg.scenario, static_cast<int>(cfg.probe_samples), rng);
        extra.emplace_back("probe_mi_ceiling", num(ceiling));
        mi_values.clear();
        for (double f : cfg.sweep_mi_frac) mi_values.push_back(f * ceiling);
    }
    if (mi_values.empty())
        throw std::runtime_error("sweep-mi: no MI thresholds configured");

    std::ostringstream summary;
    summary << "mi_min,seed,final_mean_reward,final_mean_MI,feasible_frac\n";
    std::vector<PlotSeries> plots;

    for (std::size_t mi_idx = 0; mi_idx < mi_values.size(); ++mi_idx) {
        for (std::size_t s = 0; s < cfg.sweep_seeds; ++s) {
            RunConfig run_cfg = cfg;
            run_cfg.scenario.mi_min = mi_values[mi_idx];
            const std::uint64_t run_seed = seed + s;
            SimEnv env(run_cfg.scenario,
                       RandomStream::substream(run_seed, 0x61).raw());
            Agent agent(env.state_dim(), env.action_dim(), run_cfg.hp, run_seed);
            const TrainResult res = train(env, agent, run_cfg.hp, run_seed);

            char name[64];
            std::snprintf(name, sizeof name, "curve_mi%zu_seed%zu.csv", mi_idx, s);
            write_file_atomic(out_dir / name, curve_csv(res.trace));

            const std::size_t tail =
                std::min<std::size_t>(res.trace.size(), 200);
            double rew = 0.0, mi = 0.0, feas = 0.0;
            for (std::size_t i = res.trace.size() - tail; i < res.trace.size(); ++i) {
                rew += res.trace[i].raw_reward;
                mi += res.trace[i].mi;
                feas += res.trace[i].feasible;
            }
            summary << num(mi_values[mi_idx]) << ',' << run_seed << ','
                    << num(rew / static_cast<double>(tail)) << ','
                    << num(mi / static_cast<double>(tail)) << ','
                    << num(feas / static_cast<double>(tail)) << '\n';

            if (s == 0 && cfg.plot) {
                PlotSeries ps{"MI_min=" + std::string(num(mi_values[mi_idx])), {}, {}};
                const auto sm = smoothed(res.trace, 25);
                for (std::size_t i = 0; i < res.trace.size(); ++i) {
                    ps.x.push_back(static_cast<double>(res.trace[i].step));
                    ps.y.push_back(sm[i]);
                }
                plots.push_back(std::move(ps));
            }
        }
    }

    write_file_atomic(out_dir / "mi_summary.csv", summary.str());
    write_file_atomic(out_dir / "meta.txt",
                      meta_text(cfg, RunMode::sweep_mi, seed, extra));
    if (cfg.plot)
        write_file_atomic(out_dir / "plot.svg",
                          render_svg_lines("reward vs MI threshold", "step",
                                           "reward", plots));
    return 0;
}

int run_sweep_users(RunConfig& cfg, std::uint64_t seed, const fs::path& out_dir) {
    std::vector<std::pair<std::string, std::string>> extra;
    resolve_mi_min(cfg, seed, extra);

    std::size_t threads = cfg.threads;
    if (threads == 0)
        threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());

    const auto rows =
        sweep_users(cfg.sweep_policies, cfg.sweep_users_list, cfg.scenario,
                    cfg.hp, seed, cfg.sweep_seeds, cfg.baseline_opts, threads);

    std::ostringstream csv;
    csv << "N,policy,mean_rate_bps,std_rate_bps,mean_MI_bits\n";
    for (const SweepRow& r : rows)
        csv << r.n_users << ',' << policy_name(r.kind) << ',' << num(r.mean_rate)
            << ',' << num(r.std_rate) << ',' << num(r.mean_mi) << '\n';
    write_file_atomic(out_dir / "sweep.csv", csv.str());
    write_file_atomic(out_dir / "meta.txt",
                      meta_text(cfg, RunMode::sweep_users, seed, extra));

    if (cfg.plot) {
        std::vector<PlotSeries> plots;
        for (PolicyKind kind : cfg.sweep_policies) {
            PlotSeries ps{policy_name(kind), {}, {}};
            for (const SweepRow& r : rows)
                if (r.kind == kind) {
                    ps.x.push_back(static_cast<double>(r.n_users));
                    ps.y.push_back(r.mean_rate);
                }
            plots.push_back(std::move(ps));
        }
        write_file_atomic(out_dir / "plot.svg",
                          render_svg_lines("mean rate vs users", "N",
                                           "mean rate (bps)", plots));
    }
    return 0;
}

}  // namespace

int run_mode(RunMode mode, RunConfig cfg, std::uint64_t seed,
             const std::string& out_dir) {
    const fs::path out(out_dir);
    fs::create_directories(out);
    switch (mode) {
        case RunMode::train: return run_train(cfg, seed, out);
        case RunMode::evaluate: return run_evaluate(cfg, seed, out);
        case RunMode::sweep_mi: return run_sweep_mi(cfg, seed, out);
        case RunMode::sweep_users: return run_sweep_users(cfg, seed, out);
    }
    return 2;
}

}  // namespace cvisac
