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

#include "cvisac/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cvisac {

namespace {

const std::map<std::string, std::string>& defaults() {
    static const std::map<std::string, std::string> kDefaults = {
        {"scenario.users", "10"},
        {"scenario.antennas", "16"},
        {"scenario.p_max", "1.0"},
        {"scenario.mi_min", "90.0"},
        {"scenario.mi_min_frac", "0.0"},
        {"scenario.probe_samples", "10000"},
        {"scenario.p_block", "0.2"},
        {"scenario.coverage_radius", "100.0"},
        {"scenario.cell_radius", "100.0"},
        {"scenario.bs_height", "10.0"},
        {"scenario.episode_slots", "50"},
        {"scenario.classes", "60"},
        {"scenario.activity_table", ""},
        {"channel.bandwidth_total", "1e8"},
        {"channel.noise_power", "1e-9"},
        {"channel.channel_variance", "2.0"},
        {"channel.pathloss_exponent", "2.0"},
        {"channel.reference_distance", "1.0"},
        {"channel.symbols_per_slot", "14"},
        {"channel.pilot_symbols", "2"},
        {"channel.mm.wavelength", "0.002"},
        {"channel.mm.paths", "5"},
        {"channel.lte.wavelength", "0.1"},
        {"channel.lte.paths", "9"},
        {"channel.nlos_mm_loss_db", "0.0"},
        {"sinr.interference_exponent", "2"},
        {"sinr.floor_db", "-200.0"},
        {"sensing.noise_var", "1.0"},
        {"sensing.symbols", "128"},
        {"sensing.rice_factor", "3.0"},
        // Recorded in the metadata echo only; no formula here consumes them.
        {"sensing.symbol_time", "5e-05"},
        {"sensing.rcs", "100.0"},
        {"sensing.rms_bandwidth_factor", "3.4641016151377544"},
        {"camera.focal_length", "0.004"},
        {"camera.x", "0.0"},
        {"camera.y", "0.0"},
        {"camera.height", "10.0"},
        {"camera.roll", "0.0"},
        {"camera.pitch", "3.141592653589793"},
        {"camera.yaw", "0.0"},
        {"camera.target_height", "1.7"},
        {"camera.target_width", "0.5"},
        {"camera.pixel_noise", "0.0"},
        {"camera.activity_error_rate", "0.05"},
        {"radar.range_noise", "0.0"},
        {"ddpg.actor_lr", "0.001"},
        {"ddpg.critic_lr", "0.001"},
        {"ddpg.discount", "0.99"},
        {"ddpg.tau", "0.005"},
        {"ddpg.buffer_size", "10000"},
        {"ddpg.batch_size", "64"},
        {"ddpg.max_steps", "3000"},
        {"ddpg.noise", "0.2"},
        {"ddpg.noise_is_variance", "false"},
        {"ddpg.hidden", "0"},
        {"ddpg.warmup", "1000"},
        {"ddpg.reward_norm", "true"},
        {"eval.episodes", "10"},
        {"eval.checkpoint", ""},
        {"eval.policy", "proposed"},
        {"baselines.precoder", "ddpg"},
        {"sweep.users", "6,7,8,9,10"},
        {"sweep.mi", "90,95,100"},
        {"sweep.mi_frac", ""},
        {"sweep.seeds", "3"},
        {"sweep.policies", "proposed,random_rat,all_mmwave,all_lte"},
        {"runtime.threads", "0"},
        {"output.plot", "true"},
    };
    return kDefaults;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void set_key(std::map<std::string, std::string>& values, const std::string& key,
             const std::string& value, const std::string& where) {
    if (defaults().find(key) == defaults().end())
        throw ConfigError("unknown config key '" + key + "' (" + where + ")");
    values[key] = value;
}

class Reader {
  public:
    explicit Reader(const std::map<std::string, std::string>& values)
        : values_(values) {}

    double num(const std::string& key) const {
        const std::string& s = get(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected a number, got '" +
                              s + "'");
        }
    }

    std::size_t size(const std::string& key) const {
        const double v = num(key);
        if (v < 0 || v != std::floor(v))
            throw ConfigError("config key '" + key +
                              "': expected a nonnegative integer");
        return static_cast<std::size_t>(v);
    }

    int integer(const std::string& key) const {
        const double v = num(key);
        if (v != std::floor(v))
            throw ConfigError("config key '" + key + "': expected an integer");
        return static_cast<int>(v);
    }

    bool boolean(const std::string& key) const {
        const std::string& s = get(key);
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0") return false;
        throw ConfigError("config key '" + key + "': expected true/false");
    }

    std::string str(const std::string& key) const { return get(key); }

    std::vector<double> num_list(const std::string& key) const {
        std::vector<double> out;
        const std::string s = get(key);
        if (trim(s).empty()) return out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw ConfigError("config key '" + key + "': bad list entry '" +
                                  item + "'");
            }
        }
        return out;
    }

  private:
    const std::string& get(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end())
            throw ConfigError("internal: missing config key " + key);
        return it->second;
    }
    const std::map<std::string, std::string>& values_;
};

}  // namespace

const std::map<std::string, std::string>& config_defaults() { return defaults(); }

RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides) {
    std::map<std::string, std::string> values = defaults();

    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config parse error at " + path + ":" +
                                  std::to_string(lineno) + ": expected key = value");
            set_key(values, trim(t.substr(0, eq)), trim(t.substr(eq + 1)),
                    path + ":" + std::to_string(lineno));
        }
    }

    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + ov + "'");
        set_key(values, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)),
                "command line");
    }

    const Reader r(values);
    RunConfig cfg;
    cfg.resolved = values;

    Scenario sc = make_default_scenario();
    sc.n_users = r.size("scenario.users");
    sc.n_antennas = r.size("scenario.antennas");
    sc.p_max = r.num("scenario.p_max");
    sc.mi_min = r.num("scenario.mi_min");
    sc.bandwidth_total = r.num("channel.bandwidth_total");
    sc.p_block = r.num("scenario.p_block");
    sc.coverage_radius = r.num("scenario.coverage_radius");
    sc.cell_radius = r.num("scenario.cell_radius");
    sc.bs_height = r.num("scenario.bs_height");
    sc.episode_slots = r.size("scenario.episode_slots");
    sc.n_classes = r.integer("scenario.classes");

    auto fill_rat = [&](ChannelParams& p, const std::string& prefix) {
        p.antennas = sc.n_antennas;
        p.wavelength = r.num(prefix + ".wavelength");
        p.antenna_spacing = p.wavelength / 2.0;
        p.n_paths = r.size(prefix + ".paths");
        p.pathloss_exponent = r.num("channel.pathloss_exponent");
        p.reference_distance = r.num("channel.reference_distance");
        p.noise_power = r.num("channel.noise_power");
        p.channel_variance = r.num("channel.channel_variance");
        p.bandwidth = sc.bandwidth_total / static_cast<double>(sc.n_users);
        p.symbols_per_slot = r.size("channel.symbols_per_slot");
        p.pilot_symbols = r.size("channel.pilot_symbols");
    };
    fill_rat(sc.mm, "channel.mm");
    fill_rat(sc.lte, "channel.lte");
    sc.nlos_mm_loss_db = r.num("channel.nlos_mm_loss_db");

    const int iexp = r.integer("sinr.interference_exponent");
    if (iexp != 1 && iexp != 2)
        throw ConfigError("sinr.interference_exponent must be 1 or 2");
    sc.sinr.interference_exponent = iexp;
    sc.sinr.floor_db = r.num("sinr.floor_db");

    sc.sensing.noise_var = r.num("sensing.noise_var");
    sc.sensing.symbols = r.size("sensing.symbols");
    sc.sensing.rice_factor = r.num("sensing.rice_factor");
    sc.sensing.antennas = sc.n_antennas;
    sc.sensing.wavelength = sc.mm.wavelength;
    sc.sensing.antenna_spacing = sc.mm.antenna_spacing;

    sc.camera.focal_length = r.num("camera.focal_length");
    sc.camera.position = {r.num("camera.x"), r.num("camera.y"),
                          r.num("camera.height")};
    sc.camera.roll = r.num("camera.roll");
    sc.camera.pitch = r.num("camera.pitch");
    sc.camera.yaw = r.num("camera.yaw");
    sc.target_height = r.num("camera.target_height");
    sc.target_width = r.num("camera.target_width");
    sc.detection.pixel_sigma = r.num("camera.pixel_noise");
    sc.detection.activity_error_rate = r.num("camera.activity_error_rate");
    sc.radar_sigma = r.num("radar.range_noise");

    const std::string table_path = r.str("scenario.activity_table");
    try {
        sc.activity_table = table_path.empty()
                                ? default_activity_table(sc.n_classes)
                                : load_activity_table(table_path, sc.n_classes);
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }

    Hyperparams hp;
    hp.actor_lr = r.num("ddpg.actor_lr");
    hp.critic_lr = r.num("ddpg.critic_lr");
    hp.discount = r.num("ddpg.discount");
    hp.tau = r.num("ddpg.tau");
    hp.buffer_size = r.size("ddpg.buffer_size");
    hp.batch_size = r.size("ddpg.batch_size");
    hp.max_steps = r.size("ddpg.max_steps");
    hp.noise = r.num("ddpg.noise");
    hp.noise_is_variance = r.boolean("ddpg.noise_is_variance");
    hp.hidden = r.size("ddpg.hidden");
    hp.warmup = r.size("ddpg.warmup");
    hp.reward_norm = r.boolean("ddpg.reward_norm");

    cfg.mi_min_frac = r.num("scenario.mi_min_frac");
    if (cfg.mi_min_frac < 0)
        throw ConfigError("scenario.mi_min_frac must be >= 0");
    cfg.probe_samples = r.size("scenario.probe_samples");

    cfg.baseline_opts.eval_episodes = r.size("eval.episodes");
    const std::string precoder = r.str("baselines.precoder");
    if (precoder != "ddpg" && precoder != "matched")
        throw ConfigError("baselines.precoder must be 'ddpg' or 'matched'");
    cfg.baseline_opts.matched_filter = precoder == "matched";

    cfg.eval_checkpoint = r.str("eval.checkpoint");
    if (auto p = parse_policy(r.str("eval.policy"))) {
        cfg.eval_policy = *p;
    } else {
        throw ConfigError("eval.policy: unknown policy '" + r.str("eval.policy") +
                          "'");
    }

    cfg.sweep_mi = r.num_list("sweep.mi");
    cfg.sweep_mi_frac = r.num_list("sweep.mi_frac");
    for (double v : r.num_list("sweep.users")) {
        if (v < 1 || v != std::floor(v))
            throw ConfigError("sweep.users entries must be positive integers");
        cfg.sweep_users_list.push_back(static_cast<std::size_t>(v));
    }
    cfg.sweep_seeds = r.size("sweep.seeds");
    if (cfg.sweep_seeds == 0) throw ConfigError("sweep.seeds must be >= 1");
    {
        std::stringstream ss(r.str("sweep.policies"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            const auto p = parse_policy(item);
            if (!p) throw ConfigError("sweep.policies: unknown policy '" + item + "'");
            cfg.sweep_policies.push_back(*p);
        }
        if (cfg.sweep_policies.empty())
            throw ConfigError("sweep.policies must not be empty");
    }

    cfg.threads = r.size("runtime.threads");
    cfg.plot = r.boolean("output.plot");

    try {
        sc.validate();
        hp.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config validation: ") + e.what());
    }

    cfg.scenario = std::move(sc);
    cfg.hp = hp;
    return cfg;
}

}  // namespace cvisac
