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

#ifndef CVISAC_DDPG_HPP
#define CVISAC_DDPG_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvisac/rng.hpp"

// Deterministic policy-gradient agent built from scratch: two-layer networks
// with hand-written forward/backward passes, Adam, a ring replay buffer and
// soft-updated target networks.

namespace cvisac {

enum class Activation { relu, sigmoid, identity };

// Two fully connected layers with per-layer activations. Parameters live in
// one flat buffer (w1, b1, w2, b2 in declaration order) so optimizer state,
// soft updates and checkpoints all operate on a single span.
class Mlp {
  public:
    Mlp() = default;
    Mlp(std::size_t in, std::size_t hidden, std::size_t out, Activation act1,
        Activation act2);

    void init_random(RandomStream& rng);

    std::size_t in_dim() const { return in_; }
    std::size_t hidden_dim() const { return hidden_; }
    std::size_t out_dim() const { return out_; }
    std::size_t param_count() const { return params_.size(); }
    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }

    struct Cache {
        std::vector<double> x, z1, h, z2, out;
        bool valid = false;
    };

    void forward(std::span<const double> x, Cache& cache) const;

    struct Grads {
        std::vector<double> flat;  // same layout as params
        void accumulate_scale(double s);
    };
    Grads make_grads() const { return Grads{std::vector<double>(params_.size(), 0.0)}; }

    // Accumulates parameter gradients for the cached forward pass given
    // dL/d(out); optionally produces dL/dx. Throws std::logic_error when the
    // cache does not hold a forward pass.
    void backward(const Cache& cache, std::span<const double> dout,
                  Grads& grads, std::vector<double>* dx) const;

    bool same_shape(const Mlp& other) const {
        return in_ == other.in_ && hidden_ == other.hidden_ && out_ == other.out_;
    }

  private:
    std::span<double> w1_() { return {params_.data(), hidden_ * in_}; }
    std::span<double> b1_() { return {params_.data() + hidden_ * in_, hidden_}; }
    std::span<double> w2_() {
        return {params_.data() + hidden_ * in_ + hidden_, out_ * hidden_};
    }
    std::span<double> b2_() {
        return {params_.data() + hidden_ * in_ + hidden_ + out_ * hidden_, out_};
    }
    std::span<const double> cw1_() const { return {params_.data(), hidden_ * in_}; }
    std::span<const double> cb1_() const {
        return {params_.data() + hidden_ * in_, hidden_};
    }
    std::span<const double> cw2_() const {
        return {params_.data() + hidden_ * in_ + hidden_, out_ * hidden_};
    }
    std::span<const double> cb2_() const {
        return {params_.data() + hidden_ * in_ + hidden_ + out_ * hidden_, out_};
    }

    std::size_t in_ = 0, hidden_ = 0, out_ = 0;
    Activation act1_ = Activation::relu;
    Activation act2_ = Activation::identity;
    std::vector<double> params_;
};

// target <- tau * online + (1 - tau) * target, elementwise over the flat
// parameter buffers. Throws std::invalid_argument on architecture mismatch.
void soft_update(Mlp& target, const Mlp& online, double tau);

class Adam {
  public:
    Adam() = default;
    Adam(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999,
         double eps = 1e-8);
    void step(std::span<double> params, std::span<const double> grads);

  private:
    std::vector<double> m_, v_;
    double lr_ = 1e-3, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
    std::int64_t t_ = 0;
};

struct Transition {
    std::vector<double> state;
    std::vector<double> action;  // raw agent output, pre-decoding
    double reward = 0;
    std::vector<double> next_state;
};

// Fixed-capacity ring buffer; oldest entries are overwritten first.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity);
    void push(Transition t);
    std::size_t size() const { return size_; }
    std::size_t capacity() const { return capacity_; }
    const Transition& sample(RandomStream& rng) const;

  private:
    std::size_t capacity_, head_ = 0, size_ = 0;
    std::vector<Transition> data_;
};

// Adds N(0, sigma^2) per component and clips to [0,1].
void add_exploration_noise(std::span<double> action, double sigma,
                           RandomStream& rng);

struct Hyperparams {
    double actor_lr = 0.001;
    double critic_lr = 0.001;
    double discount = 0.99;
    double tau = 0.005;
    std::size_t buffer_size = 10000;
    std::size_t batch_size = 64;
    std::size_t max_steps = 3000;
    double noise = 0.2;            // exploration noise scale
    bool noise_is_variance = false;  // true: `noise` is a variance
    std::size_t warmup = 1000;      // transitions before updates start
    std::size_t hidden = 0;         // 0 = auto from the action dimension
    bool reward_norm = true;

    double noise_stddev() const;
    std::size_t hidden_for(std::size_t action_dim) const;
    void validate() const;
};

// Optional clamp on the RAT-indicator slice of the raw action; the fixed
// baselines train and act through it. random_per_episode bits are redrawn by
// the training/evaluation loop at every episode boundary.
struct RatClamp {
    enum class Mode { none, all_mmwave, all_lte, random_per_episode };
    Mode mode = Mode::none;
    std::vector<double> bits;  // current draw for random_per_episode

    void apply(std::span<double> raw_action, std::size_t n_users) const;
    void resample(std::size_t n_users, RandomStream& rng);
    bool active() const { return mode != Mode::none; }
};

// Minimal environment interface the trainer drives; the simulator
// environment adapts itself to it, and unit tests substitute toy problems.
class EnvBase {
  public:
    virtual ~EnvBase() = default;
    virtual std::size_t state_dim() const = 0;
    virtual std::size_t action_dim() const = 0;
    virtual std::size_t n_users() const = 0;  // length of the clampable slice
    virtual std::vector<double> reset() = 0;

    struct Out {
        std::vector<double> state;
        double reward = 0;
        bool done = false;
        double mi = 0;
        bool feasible = false;
        double sum_rate = 0;
    };
    virtual Out step_raw(std::span<const double> raw_action) = 0;
};

class Agent {
  public:
    Agent(std::size_t state_dim, std::size_t action_dim, const Hyperparams& hp,
          std::uint64_t seed);

    std::vector<double> act(std::span<const double> state) const;
    // One gradient update on a sampled batch; returns the critic loss.
    double update(ReplayBuffer& buffer, double reward_scale, RandomStream& rng,
                  const RatClamp& clamp, std::size_t n_users);

    void save(const std::string& path) const;
    static Agent load(const std::string& path, const Hyperparams& hp);

    std::size_t state_dim() const { return state_dim_; }
    std::size_t action_dim() const { return action_dim_; }
    const Mlp& actor() const { return actor_; }
    const Mlp& critic() const { return critic_; }

  private:
    Agent() = default;
    std::size_t state_dim_ = 0, action_dim_ = 0;
    Mlp actor_, critic_, actor_target_, critic_target_;
    Adam actor_opt_, critic_opt_;
    double discount_ = 0.99, tau_ = 0.005;
    std::size_t batch_size_ = 64;
};

struct StepRecord {
    std::size_t step;  // 1-based
    double raw_reward;
    double norm_reward;
    double mi;
    int feasible;
};

struct TrainResult {
    std::vector<StepRecord> trace;
    double final_reward_scale = 1.0;
};

// Standard DDPG loop: act with exploration noise, store, update after
// warm-up, soft-update targets every step. Rewards are divided by a running
// max-magnitude estimate before regression when hp.reward_norm is set; the
// trace carries both raw and normalized values. Throws std::runtime_error if
// the critic loss diverges.
TrainResult train(EnvBase& env, Agent& agent, const Hyperparams& hp,
                  std::uint64_t seed, const RatClamp& clamp = {});

}  // namespace cvisac

#endif  // CVISAC_DDPG_HPP
