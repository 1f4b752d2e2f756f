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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cvisac/sensing.hpp"

using namespace cvisac;

namespace {

SensingConfig small_cfg() {
    SensingConfig cfg;
    cfg.antennas = 4;
    cfg.symbols = 16;
    cfg.noise_var = 1.0;
    cfg.rice_factor = 3.0;
    cfg.wavelength = 0.002;
    cfg.antenna_spacing = 0.001;
    return cfg;
}

}  // namespace

TEST_CASE("sensing channel normalization holds for any seed") {
    const SensingConfig cfg = small_cfg();
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
        RandomStream rng(seed);
        const CMat sigma = generate_sensing_channel(cfg, rng);
        CHECK(frobenius_norm_sq(sigma) == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("sensing channel is reproducible and Rice-limit rank one") {
    const SensingConfig cfg = small_cfg();
    RandomStream r1(5), r2(5);
    const CMat s1 = generate_sensing_channel(cfg, r1);
    const CMat s2 = generate_sensing_channel(cfg, r2);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(s1(i, j) == s2(i, j));

    // K -> inf: all 2x2 minors of a rank-one matrix vanish
    SensingConfig hard = cfg;
    hard.rice_factor = 1e18;
    RandomStream r3(6);
    const CMat s = generate_sensing_channel(hard, r3);
    double max_minor = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            max_minor = std::max(
                max_minor,
                std::abs(s(i, j) * s(i + 1, j + 1) - s(i, j + 1) * s(i + 1, j)));
    CHECK(max_minor <= 1e-6);
    CHECK(frobenius_norm_sq(s) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("MI trivial cases") {
    SensingConfig cfg = small_cfg();

    // W = 0 (but one user nominally on mmWave): det(I) = 1 -> 0 bits
    CMat w(2, 4);
    CHECK(sensing_mi(w, {1, 0}, CMat::identity(4), cfg) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // R_x = I with orthonormal rows, Sigma = I, delta = 1, M = 2, S = 3:
    // MI = log2 det(3 I + I) = 2 * log2(4) = 4 bits
    SensingConfig cfg2 = cfg;
    cfg2.antennas = 2;
    cfg2.symbols = 3;
    CMat w2(2, 2);
    w2(0, 0) = 1.0;
    w2(1, 1) = 1.0;
    CHECK(sensing_mi(w2, {1, 1}, CMat::identity(2), cfg2) ==
          doctest::Approx(4.0).epsilon(1e-12));

    // all-LTE: zero by convention
    CHECK(sensing_mi(w2, {0, 0}, CMat::identity(2), cfg2) == 0.0);
}

TEST_CASE("MI prefactor applies for non-unit noise variance") {
    SensingConfig cfg = small_cfg();
    cfg.antennas = 2;
    cfg.symbols = 8;
    cfg.noise_var = 2.0;
    CMat w(1, 2);  // zero precoder: det(delta^2 I) = delta^4
    const double expect =
        (8.0 - 4.0) * std::log2(2.0) + 2.0 * std::log2(2.0);
    CHECK(sensing_mi(w, {1}, CMat::identity(2), cfg) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("MI invariant under unitary row mixing that preserves R_x") {
    // Mixing the mmWave rows by a unitary U leaves (W^mm)^H W^mm unchanged.
    SensingConfig cfg = small_cfg();
    RandomStream rng(7);
    CMat w(2, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            w(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const CMat sigma = generate_sensing_channel(cfg, rng);

    const double theta = 0.77;
    CMat u(2, 2);  // rotation, unitary
    u(0, 0) = std::cos(theta);
    u(0, 1) = std::sin(theta);
    u(1, 0) = -std::sin(theta);
    u(1, 1) = std::cos(theta);
    const CMat w_mixed = u * w;

    CHECK(sensing_mi(w, {1, 1}, sigma, cfg) ==
          doctest::Approx(sensing_mi(w_mixed, {1, 1}, sigma, cfg))
              .epsilon(1e-10));
}

TEST_CASE("MI nondecreasing in transmit power on PSD instances") {
    SensingConfig cfg = small_cfg();
    RandomStream rng(8);
    for (int rep = 0; rep < 10; ++rep) {
        CMat w(3, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                w(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        // positive semidefinite sensing matrix B^H B, scaled to ||.||_F^2 = M
        CMat b(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                b(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        CMat psd = b.hermitian() * b;
        psd = psd.scaled(std::sqrt(4.0 / frobenius_norm_sq(psd)));

        double prev = sensing_mi(w, {1, 1, 1}, psd, cfg);
        for (double c : {1.5, 2.0, 4.0}) {
            const double cur = sensing_mi(w.scaled(c), {1, 1, 1}, psd, cfg);
            CHECK(cur >= prev - 1e-9);
            prev = cur;
        }
    }
}

TEST_CASE("MI diagnostics: phase residual and dimension checks") {
    SensingConfig cfg = small_cfg();
    RandomStream rng(9);
    CMat w(2, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            w(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const CMat sigma = generate_sensing_channel(cfg, rng);
    SensingDiag diag;
    const double mi = sensing_mi(w, {1, 0}, sigma, cfg, &diag);
    CHECK(std::isfinite(mi));
    CHECK(!diag.singular);

    CHECK_THROWS_AS(sensing_mi(w, {1}, sigma, cfg), std::invalid_argument);
    CHECK_THROWS_AS(sensing_mi(w, {1, 0}, CMat::identity(3), cfg),
                    std::invalid_argument);
}
