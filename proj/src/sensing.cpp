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

#include "cvisac/sensing.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "cvisac/channel.hpp"

namespace cvisac {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPhaseWarn = 1e-6;
}  // namespace

void SensingConfig::validate() const {
    if (noise_var <= 0) throw std::invalid_argument("sensing: noise_var must be > 0");
    if (symbols < 1) throw std::invalid_argument("sensing: symbols must be >= 1");
    if (rice_factor < 0) throw std::invalid_argument("sensing: rice_factor must be >= 0");
    if (antennas < 1) throw std::invalid_argument("sensing: antennas must be >= 1");
}

CMat generate_sensing_channel(const SensingConfig& cfg, RandomStream& rng) {
    cfg.validate();
    const std::size_t m = cfg.antennas;
    const double k = cfg.rice_factor;
    const double w_los = std::sqrt(k / (k + 1.0));
    const double w_nlos = std::sqrt(1.0 / (k + 1.0));

    const CVec a = steering_vector(rng.uniform(-kPi / 2.0, kPi / 2.0), m,
                                   cfg.antenna_spacing, cfg.wavelength);

    CMat sigma(m, m);
    const double md = static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            // ||M * a a^H||_F = M, matching the NLoS part in expectation.
            const cplx los = md * a[i] * std::conj(a[j]);
            sigma(i, j) = w_los * los + w_nlos * rng.complex_gaussian();
        }
    }

    const double fro = std::sqrt(frobenius_norm_sq(sigma));
    return sigma.scaled(std::sqrt(md) / fro);
}

double sensing_mi(const CMat& w, const std::vector<int>& x, const CMat& sigma_g,
                  const SensingConfig& cfg, SensingDiag* diag) {
    if (w.rows() != x.size())
        throw std::invalid_argument("sensing_mi: W row count != x length");
    const std::size_t m = w.cols();
    if (sigma_g.rows() != m || sigma_g.cols() != m)
        throw std::invalid_argument("sensing_mi: Sigma_G must be M x M");

    std::size_t n_mm = 0;
    for (int xi : x) n_mm += xi != 0;
    if (n_mm == 0) return 0.0;  // no mmWave transmission, no sensing waveform

    CMat w_mm(n_mm, m);
    std::size_t r = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) w_mm(r, j) = w(i, j);
        ++r;
    }

    // R_x = (W^mm)^H W^mm = sum_i w_i w_i^H, M x M.
    const CMat r_x = w_mm.hermitian() * w_mm;
    const double s = static_cast<double>(cfg.symbols);
    CMat arg = (r_x * sigma_g).scaled(s);
    for (std::size_t i = 0; i < m; ++i) arg(i, i) += cfg.noise_var;

    const LogDet ld = log_det_complex(arg);
    if (diag != nullptr) {
        diag->det_phase = ld.arg;
        diag->singular = !std::isfinite(ld.log_abs);
    }
    if (!std::isfinite(ld.log_abs)) {
        return -std::numeric_limits<double>::infinity();
    }
    if (std::abs(ld.arg) > kPhaseWarn && diag == nullptr) {
        // The product matrix is generally non-Hermitian, so a nonzero phase
        // is common; report it once rather than per evaluation.
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true))
            std::clog << "sensing_mi: determinant phase residual " << ld.arg
                      << " rad (|det| branch in use; further notes suppressed)\n";
    }

    const double prefactor_bits =
        (s - 2.0 * static_cast<double>(m)) * std::log2(cfg.noise_var);
    return prefactor_bits + ld.log_abs / std::log(2.0);
}

}  // namespace cvisac
