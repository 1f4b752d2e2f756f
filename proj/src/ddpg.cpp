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

#include "cvisac/ddpg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "cvisac/kernels.hpp"

namespace cvisac {

namespace {

double apply_act(Activation a, double z) {
    switch (a) {
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::identity: return z;
    }
    return z;
}

// derivative expressed through pre-activation z and output y = act(z)
double act_grad(Activation a, double z, double y) {
    switch (a) {
        case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::sigmoid: return y * (1.0 - y);
        case Activation::identity: return 1.0;
    }
    return 1.0;
}

}  // namespace

Mlp::Mlp(std::size_t in, std::size_t hidden, std::size_t out, Activation act1,
         Activation act2)
    : in_(in), hidden_(hidden), out_(out), act1_(act1), act2_(act2),
      params_(hidden * in + hidden + out * hidden + out, 0.0) {
    if (in == 0 || hidden == 0 || out == 0)
        throw std::invalid_argument("Mlp: zero dimension");
}

void Mlp::init_random(RandomStream& rng) {
    // uniform fan-in scaling for both layers
    const double s1 = 1.0 / std::sqrt(static_cast<double>(in_));
    for (double& w : w1_()) w = rng.uniform(-s1, s1);
    for (double& b : b1_()) b = rng.uniform(-s1, s1);
    const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
    for (double& w : w2_()) w = rng.uniform(-s2, s2);
    for (double& b : b2_()) b = rng.uniform(-s2, s2);
}

void Mlp::forward(std::span<const double> x, Cache& cache) const {
    if (x.size() != in_) throw std::invalid_argument("Mlp::forward: input dim mismatch");
    const auto& k = kern::ops();
    cache.x.assign(x.begin(), x.end());
    cache.z1.resize(hidden_);
    cache.h.resize(hidden_);
    cache.z2.resize(out_);
    cache.out.resize(out_);

    k.gemv(cw1_().data(), hidden_, in_, cache.x.data(), cache.z1.data());
    k.axpy(1.0, cb1_().data(), cache.z1.data(), hidden_);
    for (std::size_t i = 0; i < hidden_; ++i)
        cache.h[i] = apply_act(act1_, cache.z1[i]);

    k.gemv(cw2_().data(), out_, hidden_, cache.h.data(), cache.z2.data());
    k.axpy(1.0, cb2_().data(), cache.z2.data(), out_);
    for (std::size_t i = 0; i < out_; ++i)
        cache.out[i] = apply_act(act2_, cache.z2[i]);
    cache.valid = true;
}

void Mlp::Grads::accumulate_scale(double s) {
    for (double& g : flat) g *= s;
}

void Mlp::backward(const Cache& cache, std::span<const double> dout,
                   Grads& grads, std::vector<double>* dx) const {
    if (!cache.valid)
        throw std::logic_error("Mlp::backward: no cached forward pass");
    if (dout.size() != out_ || cache.x.size() != in_)
        throw std::invalid_argument("Mlp::backward: dimension mismatch");
    if (grads.flat.size() != params_.size())
        throw std::invalid_argument("Mlp::backward: gradient buffer mismatch");
    const auto& k = kern::ops();

    std::vector<double> dz2(out_);
    for (std::size_t i = 0; i < out_; ++i)
        dz2[i] = dout[i] * act_grad(act2_, cache.z2[i], cache.out[i]);

    double* gw1 = grads.flat.data();
    double* gb1 = gw1 + hidden_ * in_;
    double* gw2 = gb1 + hidden_;
    double* gb2 = gw2 + out_ * hidden_;

    k.ger(gw2, out_, hidden_, 1.0, dz2.data(), cache.h.data());
    k.axpy(1.0, dz2.data(), gb2, out_);

    std::vector<double> dh(hidden_);
    k.gemv_t(cw2_().data(), out_, hidden_, dz2.data(), dh.data());
    for (std::size_t i = 0; i < hidden_; ++i)
        dh[i] *= act_grad(act1_, cache.z1[i], cache.h[i]);

    k.ger(gw1, hidden_, in_, 1.0, dh.data(), cache.x.data());
    k.axpy(1.0, dh.data(), gb1, hidden_);

    if (dx != nullptr) {
        dx->resize(in_);
        k.gemv_t(cw1_().data(), hidden_, in_, dh.data(), dx->data());
    }
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
    if (!target.same_shape(online))
        throw std::invalid_argument("soft_update: architecture mismatch");
    kern::ops().axpby(tau, online.params().data(), 1.0 - tau,
                      target.params().data(), target.params().size());
}

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double eps)
    : m_(n, 0.0), v_(n, 0.0), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void Adam::step(std::span<double> params, std::span<const double> grads) {
    if (params.size() != m_.size() || grads.size() != m_.size())
        throw std::invalid_argument("Adam::step: size mismatch");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    kern::ops().adam_step(params.data(), m_.data(), v_.data(), grads.data(),
                          params.size(), lr_, beta1_, beta2_, eps_, bc1, bc2);
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("ReplayBuffer: zero capacity");
    data_.resize(capacity);
}

void ReplayBuffer::push(Transition t) {
    data_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
    size_ = std::min(size_ + 1, capacity_);
}

const Transition& ReplayBuffer::sample(RandomStream& rng) const {
    if (size_ == 0) throw std::logic_error("ReplayBuffer: sampling empty buffer");
    return data_[rng.uniform_index(size_)];
}

void add_exploration_noise(std::span<double> action, double sigma,
                           RandomStream& rng) {
    for (double& a : action) {
        if (sigma > 0.0) a += rng.gaussian(0.0, sigma);
        a = std::clamp(a, 0.0, 1.0);
    }
}

double Hyperparams::noise_stddev() const {
    return noise_is_variance ? std::sqrt(noise) : noise;
}

std::size_t Hyperparams::hidden_for(std::size_t action_dim) const {
    if (hidden != 0) return hidden;
    return action_dim <= 256 ? 256 : 512;
}

void Hyperparams::validate() const {
    if (actor_lr <= 0 || critic_lr <= 0)
        throw std::invalid_argument("hyperparams: learning rates must be > 0");
    if (discount < 0 || discount > 1)
        throw std::invalid_argument("hyperparams: discount must be in [0,1]");
    if (tau <= 0 || tau > 1)
        throw std::invalid_argument("hyperparams: tau must be in (0,1]");
    if (buffer_size == 0) throw std::invalid_argument("hyperparams: buffer_size must be > 0");
    if (batch_size == 0) throw std::invalid_argument("hyperparams: batch_size must be > 0");
    if (max_steps == 0) throw std::invalid_argument("hyperparams: max_steps must be > 0");
    if (noise < 0) throw std::invalid_argument("hyperparams: noise must be >= 0");
}

void RatClamp::apply(std::span<double> raw_action, std::size_t n_users) const {
    switch (mode) {
        case Mode::none: return;
        case Mode::all_mmwave:
            for (std::size_t i = 0; i < n_users; ++i) raw_action[i] = 1.0;
            return;
        case Mode::all_lte:
            for (std::size_t i = 0; i < n_users; ++i) raw_action[i] = 0.0;
            return;
        case Mode::random_per_episode:
            for (std::size_t i = 0; i < n_users; ++i) raw_action[i] = bits[i];
            return;
    }
}

void RatClamp::resample(std::size_t n_users, RandomStream& rng) {
    bits.resize(n_users);
    for (double& b : bits) b = rng.bernoulli(0.5) ? 1.0 : 0.0;
}

Agent::Agent(std::size_t state_dim, std::size_t action_dim,
             const Hyperparams& hp, std::uint64_t seed)
    : state_dim_(state_dim), action_dim_(action_dim) {
    hp.validate();
    const std::size_t hidden = hp.hidden_for(action_dim);
    actor_ = Mlp(state_dim, hidden, action_dim, Activation::relu,
                 Activation::sigmoid);
    critic_ = Mlp(state_dim + action_dim, hidden, 1, Activation::relu,
                  Activation::identity);
    RandomStream rng = RandomStream::substream(seed, 0x11);
    actor_.init_random(rng);
    critic_.init_random(rng);
    actor_target_ = actor_;
    critic_target_ = critic_;
    actor_opt_ = Adam(actor_.param_count(), hp.actor_lr);
    critic_opt_ = Adam(critic_.param_count(), hp.critic_lr);
    discount_ = hp.discount;
    tau_ = hp.tau;
    batch_size_ = hp.batch_size;
}

std::vector<double> Agent::act(std::span<const double> state) const {
    Mlp::Cache cache;
    actor_.forward(state, cache);
    return cache.out;
}

double Agent::update(ReplayBuffer& buffer, const RewardNormalizer* norm,
                     RandomStream& rng, const RatClamp& clamp,
                     std::size_t n_users) {
    const double inv_batch = 1.0 / static_cast<double>(batch_size_);

    std::vector<const Transition*> batch(batch_size_);
    for (auto& t : batch) t = &buffer.sample(rng);

    // critic regression toward r + gamma * Q_target(s', mu_target(s'))
    Mlp::Grads critic_grads = critic_.make_grads();
    Mlp::Cache actor_t_cache, critic_t_cache, critic_cache;
    std::vector<double> sa(state_dim_ + action_dim_);
    double critic_loss = 0.0;
    std::vector<double> targets(batch_size_);
    for (std::size_t b = 0; b < batch_size_; ++b) {
        const Transition& tr = *batch[b];
        actor_target_.forward(tr.next_state, actor_t_cache);
        std::vector<double> next_a = actor_t_cache.out;
        clamp.apply(next_a, n_users);
        std::copy(tr.next_state.begin(), tr.next_state.end(), sa.begin());
        std::copy(next_a.begin(), next_a.end(), sa.begin() + state_dim_);
        critic_target_.forward(sa, critic_t_cache);
        const double r = norm != nullptr ? norm->apply(tr.reward) : tr.reward;
        targets[b] = r + discount_ * critic_t_cache.out[0];
    }
    for (std::size_t b = 0; b < batch_size_; ++b) {
        const Transition& tr = *batch[b];
        std::copy(tr.state.begin(), tr.state.end(), sa.begin());
        std::copy(tr.action.begin(), tr.action.end(), sa.begin() + state_dim_);
        critic_.forward(sa, critic_cache);
        const double err = critic_cache.out[0] - targets[b];
        critic_loss += err * err * inv_batch;
        const double dout = 2.0 * err * inv_batch;
        critic_.backward(critic_cache, std::span<const double>(&dout, 1),
                         critic_grads, nullptr);
    }
    critic_opt_.step(critic_.params(), critic_grads.flat);

    // actor ascends Q(s, mu(s)) through the frozen critic
    Mlp::Grads actor_grads = actor_.make_grads();
    Mlp::Grads scratch = critic_.make_grads();  // written, never read
    Mlp::Cache actor_cache;
    std::vector<double> dsa;
    for (std::size_t b = 0; b < batch_size_; ++b) {
        const Transition& tr = *batch[b];
        actor_.forward(tr.state, actor_cache);
        std::vector<double> a = actor_cache.out;
        clamp.apply(a, n_users);
        std::copy(tr.state.begin(), tr.state.end(), sa.begin());
        std::copy(a.begin(), a.end(), sa.begin() + state_dim_);
        critic_.forward(sa, critic_cache);
        const double dq = -inv_batch;  // minimize -Q
        critic_.backward(critic_cache, std::span<const double>(&dq, 1),
                         scratch, &dsa);
        std::vector<double> da(dsa.begin() + static_cast<std::ptrdiff_t>(state_dim_),
                               dsa.end());
        if (clamp.active())
            for (std::size_t i = 0; i < n_users; ++i) da[i] = 0.0;
        actor_.backward(actor_cache, da, actor_grads, nullptr);
    }
    actor_opt_.step(actor_.params(), actor_grads.flat);

    soft_update(actor_target_, actor_, tau_);
    soft_update(critic_target_, critic_, tau_);
    return critic_loss;
}

namespace {
constexpr char kCkptMagic[8] = {'C', 'V', 'A', 'C', 'A', 'G', 'T', '1'};

void put_u64(std::ofstream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ofstream& out, std::span<const double> v) {
    // 64-bit little-endian IEEE doubles
    for (double d : v) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, 8);
        put_u64(out, bits);
    }
}

void get_f64(std::ifstream& in, std::span<double> v) {
    for (double& d : v) {
        const std::uint64_t bits = get_u64(in);
        std::memcpy(&d, &bits, 8);
    }
}
}  // namespace

void Agent::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("Agent::save: cannot open " + path);
    out.write(kCkptMagic, sizeof(kCkptMagic));
    put_u64(out, state_dim_);
    put_u64(out, action_dim_);
    put_u64(out, actor_.hidden_dim());
    put_f64(out, actor_.params());
    put_f64(out, critic_.params());
    put_f64(out, actor_target_.params());
    put_f64(out, critic_target_.params());
    if (!out) throw std::runtime_error("Agent::save: write failed: " + path);
}

Agent Agent::load(const std::string& path, const Hyperparams& hp) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("Agent::load: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kCkptMagic, 8) != 0)
        throw std::runtime_error("Agent::load: bad checkpoint header");
    const std::uint64_t sd = get_u64(in);
    const std::uint64_t ad = get_u64(in);
    const std::uint64_t hidden = get_u64(in);

    Hyperparams hp2 = hp;
    hp2.hidden = hidden;
    Agent agent(sd, ad, hp2, 0);
    get_f64(in, agent.actor_.params());
    get_f64(in, agent.critic_.params());
    get_f64(in, agent.actor_target_.params());
    get_f64(in, agent.critic_target_.params());
    if (!in) throw std::runtime_error("Agent::load: truncated checkpoint");
    return agent;
}

TrainResult train(EnvBase& env, Agent& agent, const Hyperparams& hp,
                  std::uint64_t seed, const RatClamp& clamp) {
    hp.validate();
    if (agent.state_dim() != env.state_dim() ||
        agent.action_dim() != env.action_dim())
        throw std::invalid_argument("train: agent/environment dimension mismatch");

    RandomStream noise_rng = RandomStream::substream(seed, 0x21);
    RandomStream sample_rng = RandomStream::substream(seed, 0x22);
    RandomStream clamp_rng = RandomStream::substream(seed, 0x23);

    RatClamp live_clamp = clamp;
    const double sigma = hp.noise_stddev();

    ReplayBuffer buffer(hp.buffer_size);
    TrainResult result;
    result.trace.reserve(hp.max_steps);

    // Positive rewards and penalties live on wildly different scales
    // (sum rates vs a flat -100), so each side is normalized by its own
    // running max magnitude; penalties land at -1 instead of vanishing.
    RewardNormalizer norm;
    std::vector<double> state = env.reset();
    if (live_clamp.mode == RatClamp::Mode::random_per_episode)
        live_clamp.resample(env.n_users(), clamp_rng);

    for (std::size_t step = 1; step <= hp.max_steps; ++step) {
        std::vector<double> action = agent.act(state);
        add_exploration_noise(action, sigma, noise_rng);
        live_clamp.apply(action, env.n_users());

        EnvBase::Out out = env.step_raw(action);

        buffer.push({state, action, out.reward, out.state});
        if (hp.reward_norm) norm.observe(out.reward);

        result.trace.push_back({step, out.reward,
                                hp.reward_norm ? norm.apply(out.reward) : out.reward,
                                out.mi, out.feasible ? 1 : 0});

        if (buffer.size() >= std::max(hp.warmup, hp.batch_size)) {
            const double loss = agent.update(buffer, hp.reward_norm ? &norm : nullptr,
                                             sample_rng, live_clamp, env.n_users());
            if (!std::isfinite(loss) || loss > 1e12)
                throw std::runtime_error("train: critic loss diverged");
        }

        if (out.done) {
            state = env.reset();
            if (live_clamp.mode == RatClamp::Mode::random_per_episode)
                live_clamp.resample(env.n_users(), clamp_rng);
        } else {
            state = std::move(out.state);
        }
    }
    result.final_reward_scale = norm.positive_scale();
    return result;
}

}  // namespace cvisac
