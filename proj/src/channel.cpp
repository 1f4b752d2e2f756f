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

#include "cvisac/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "cvisac/kernels.hpp"

namespace cvisac {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}
}  // namespace

void ChannelParams::validate() const {
    require(antennas >= 1, "channel: antennas must be >= 1");
    require(n_paths >= 1, "channel: n_paths must be >= 1");
    require(wavelength > 0, "channel: wavelength must be > 0");
    require(antenna_spacing > 0, "channel: antenna_spacing must be > 0");
    require(reference_distance > 0, "channel: reference_distance must be > 0");
    require(noise_power > 0, "channel: noise_power must be > 0");
    require(channel_variance > 0, "channel: channel_variance must be > 0");
    require(bandwidth > 0, "channel: bandwidth must be > 0");
    require(pilot_symbols >= 1, "channel: pilot_symbols must be >= 1");
    require(symbols_per_slot > pilot_symbols,
            "channel: symbols_per_slot must exceed pilot_symbols");
}

CVec steering_vector(double phi, std::size_t antennas, double spacing,
                     double wavelength) {
    require(antennas >= 1, "steering_vector: antennas must be >= 1");
    require(spacing > 0, "steering_vector: spacing must be > 0");
    require(wavelength > 0, "steering_vector: wavelength must be > 0");
    CVec a(antennas);
    const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
    const double phase_step = 2.0 * kPi / wavelength * spacing * std::sin(phi);
    for (std::size_t m = 0; m < antennas; ++m) {
        const double ph = phase_step * static_cast<double>(m);
        a[m] = cplx{scale * std::cos(ph), scale * std::sin(ph)};
    }
    return a;
}

CVec channel_from_paths(const ChannelParams& p, const std::vector<cplx>& alpha,
                        const std::vector<double>& phi) {
    require(alpha.size() == phi.size() && !alpha.empty(),
            "channel_from_paths: alpha/phi length mismatch");
    CVec h(p.antennas);
    const double scale = std::sqrt(static_cast<double>(p.antennas) /
                                   static_cast<double>(alpha.size()));
    for (std::size_t l = 0; l < alpha.size(); ++l) {
        const CVec a = steering_vector(phi[l], p.antennas, p.antenna_spacing,
                                       p.wavelength);
        const cplx w = scale * alpha[l];
        for (std::size_t m = 0; m < p.antennas; ++m) h[m] += w * a[m];
    }
    return h;
}

UserChannel generate_channel(const ChannelParams& p, RandomStream& rng) {
    std::vector<cplx> alpha(p.n_paths);
    std::vector<double> phi(p.n_paths);
    for (std::size_t l = 0; l < p.n_paths; ++l) {
        alpha[l] = rng.complex_gaussian();
        phi[l] = rng.uniform(-kPi / 2.0, kPi / 2.0);
    }
    return {channel_from_paths(p, alpha, phi), p.wavelength};
}

double sinr_db(std::size_t n, const std::vector<UserChannel>& channels,
               const CMat& w, const std::vector<int>& x,
               const ChannelParams& p, double distance,
               const SinrOptions& opt) {
    require(n < channels.size(), "sinr_db: user index out of range");
    require(w.rows() == channels.size(), "sinr_db: W row count != user count");
    require(x.size() == channels.size(), "sinr_db: x length != user count");
    require(distance > 0, "sinr_db: distance must be > 0");

    const CVec& h = channels[n].h;
    require(h.size() == w.cols(), "sinr_db: channel length != antenna count");

    const auto beam_product = [&](std::size_t i) {
        return kern::ops().cdotc(h.data(), w.row(i), w.cols());
    };

    const double signal = std::norm(beam_product(n));

    double interference = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (i == n || x[i] != x[n]) continue;
        const double mag_sq = std::norm(beam_product(i));
        interference += opt.interference_exponent == 2 ? mag_sq
                                                       : std::sqrt(mag_sq);
    }

    const double geometry =
        -20.0 * std::log10(p.wavelength / (4.0 * kPi * p.reference_distance)) +
        10.0 * p.pathloss_exponent *
            std::log10(distance / p.reference_distance);

    if (signal == 0.0) return opt.floor_db;
    const double ratio_db =
        10.0 * std::log10(signal / (interference + p.noise_power));
    return ratio_db + geometry;
}

double rate_mmwave(double gamma_linear, const ChannelParams& p) {
    if (!std::isfinite(gamma_linear) || gamma_linear <= 0.0)
        throw std::domain_error("rate_mmwave: gamma must be finite and > 0");
    const double s1 = p.channel_variance;
    const double lp = static_cast<double>(p.pilot_symbols);
    const double l = static_cast<double>(p.symbols_per_slot);

    const double z1 = (1.0 + gamma_linear * lp) / gamma_linear;
    const double z2 = 1.0 / (gamma_linear * s1);
    // e^z * Ei(-z) evaluated in scaled form; the naked e^z overflows for
    // small gamma.
    const double bracket = exp_ei_scaled(z1) - exp_ei_scaled(z2);

    const double estimation_loss = 1.0 - 1.0 / (1.0 + s1 * gamma_linear * lp);
    const double prefactor = p.bandwidth * (l - lp) /
                             (estimation_loss * std::log(2.0));
    return prefactor * bracket;
}

double rate_lte(double gamma_linear, double bandwidth) {
    if (!std::isfinite(gamma_linear) || gamma_linear < 0.0)
        throw std::domain_error("rate_lte: gamma must be finite and >= 0");
    return bandwidth * std::log2(1.0 + gamma_linear);
}

double sum_rate(const std::vector<double>& rates, const std::vector<int>& x) {
    require(rates.size() == x.size(), "sum_rate: length mismatch");
    double total = 0.0;
    for (double r : rates) total += r;
    return total;
}

}  // namespace cvisac
