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

#ifndef CVISAC_SENSING_HPP
#define CVISAC_SENSING_HPP

#include <cstddef>
#include <vector>

#include "cvisac/numerics.hpp"
#include "cvisac/rng.hpp"

// Sensing channel model and the mutual-information figure of merit computed
// from the mmWave subset of the precoding matrix.

namespace cvisac {

struct SensingConfig {
    double noise_var = 1.0;    // delta_r^2
    std::size_t symbols = 128;  // S, OFDM symbols
    double rice_factor = 3.0;   // K
    std::size_t antennas = 16;  // M
    double wavelength = 0.002;  // for the LoS steering structure
    double antenna_spacing = 0.001;

    void validate() const;
};

// Rician-structured normalized sensing channel:
//   Sigma = sqrt(K/(K+1)) * Sigma_LoS + sqrt(1/(K+1)) * Sigma_NLoS
// with Sigma_LoS = M * a(phi) a(phi)^H (rank one) and Sigma_NLoS i.i.d.
// CN(0,1) entries, rescaled afterwards so ||Sigma||_F^2 = M exactly.
CMat generate_sensing_channel(const SensingConfig& cfg, RandomStream& rng);

struct SensingDiag {
    double det_phase = 0.0;  // arg of the determinant; ~0 when well posed
    bool singular = false;
};

// Mutual information (bits):
//   log2[ (delta_r^2)^(S-2M) * det(S * R_x * Sigma_G + delta_r^2 * I_M) ]
// where R_x = (W^mm)^H W^mm and W^mm stacks the rows of W with x_i = 1.
// The log2|det| reading keeps the value real when the product matrix is not
// exactly Hermitian; a phase above 1e-6 is reported through `diag`.
// Returns exactly 0 when no user selects mmWave. Returns -inf (and sets
// diag->singular) if the determinant argument is singular to working
// precision.
double sensing_mi(const CMat& w, const std::vector<int>& x, const CMat& sigma_g,
                  const SensingConfig& cfg, SensingDiag* diag = nullptr);

}  // namespace cvisac

#endif  // CVISAC_SENSING_HPP
