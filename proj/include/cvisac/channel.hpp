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

#ifndef CVISAC_CHANNEL_HPP
#define CVISAC_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "cvisac/numerics.hpp"
#include "cvisac/rng.hpp"

// Narrow-band multipath channel generation and the per-user rate/SINR
// formulas for the two radio access technologies.

namespace cvisac {

struct ChannelParams {
    std::size_t antennas = 16;        // M
    std::size_t n_paths = 5;          // scattering paths
    double wavelength = 0.002;        // m
    double antenna_spacing = 0.001;   // m (half wavelength)
    double pathloss_exponent = 2.0;
    double reference_distance = 1.0;  // m
    double noise_power = 1e-9;        // W
    double channel_variance = 2.0;    // sigma_1^2
    double bandwidth = 1e7;           // Hz, per user
    std::size_t symbols_per_slot = 14;  // L
    std::size_t pilot_symbols = 2;      // L_p

    void validate() const;  // throws std::invalid_argument with field name
};

struct UserChannel {
    CVec h;                 // length M
    double rat_wavelength;  // wavelength the realization was drawn for
};

struct SinrOptions {
    // The interference term exponent on |H^H w_i|. 2 is the physically
    // standard squared modulus; 1 reproduces the unsquared printed form.
    int interference_exponent = 2;
    double floor_db = -200.0;  // returned when the signal term is exactly 0
};

// Uniform linear array response toward departure angle phi, unit norm:
// entry m = (1/sqrt(M)) * exp(j * (2*pi/lambda) * d * m * sin(phi)).
CVec steering_vector(double phi, std::size_t antennas, double spacing,
                     double wavelength);

// Deterministic core of the channel model:
// H = sqrt(M/L) * sum_l alpha[l] * a(phi[l]).
CVec channel_from_paths(const ChannelParams& p, const std::vector<cplx>& alpha,
                        const std::vector<double>& phi);

// Draws alpha ~ CN(0,1) i.i.d. and phi ~ U[-pi/2, pi/2] i.i.d.
UserChannel generate_channel(const ChannelParams& p, RandomStream& rng);

// SINR in dB for user n:
//   10*log10(|H_n^H w_n|^2 / (sum_{i != n, x_i = x_n} |H_n^H w_i|^e + sigma^2))
//   - 20*log10(lambda / (4*pi*d0)) + 10*rho*log10(d_n / d0)
// W is the N x M precoding matrix whose row i is w_i; interference only
// sums over users sharing user n's RAT.
double sinr_db(std::size_t n, const std::vector<UserChannel>& channels,
               const CMat& w, const std::vector<int>& x,
               const ChannelParams& p, double distance,
               const SinrOptions& opt = {});

// mmWave ergodic rate (bits/s) at linear SINR gamma:
//   B(L - Lp) / {[1 - 1/(1 + s1*gamma*Lp)] ln 2}
//     * [e^{z1} Ei(-z1) - e^{z2} Ei(-z2)]
// with z1 = (1 + gamma*Lp)/gamma and z2 = 1/(gamma*s1).
// Throws std::domain_error for gamma <= 0.
double rate_mmwave(double gamma_linear, const ChannelParams& p);

// LTE rate B * log2(1 + gamma). Throws std::domain_error for gamma < 0.
double rate_lte(double gamma_linear, double bandwidth);

// sum of all per-user rates; `rates` must already be computed with the RAT
// matching each x[i] (partition over x is the identity on the total).
double sum_rate(const std::vector<double>& rates, const std::vector<int>& x);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace cvisac

#endif  // CVISAC_CHANNEL_HPP
