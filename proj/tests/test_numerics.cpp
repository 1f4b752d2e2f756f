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
#include <limits>

#include "cvisac/numerics.hpp"
#include "cvisac/rng.hpp"
#include "oracles.hpp"

using namespace cvisac;

namespace {

CMat random_cmat(std::size_t n, RandomStream& rng) {
    CMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return a;
}

}  // namespace

TEST_CASE("Ei golden values from the series oracle") {
    // frozen from the quad-precision series oracle
    CHECK(exp_integral_ei(-1.0) ==
          doctest::Approx(-0.21938393439552028).epsilon(1e-12));
    CHECK(exp_integral_ei(-0.5) ==
          doctest::Approx(-0.55977359477616081).epsilon(1e-12));
    // asymptotic decay bound |Ei(-x)| <= e^{-x}/x
    const double tail = exp_integral_ei(-50.0);
    CHECK(tail < 0.0);
    CHECK(tail > -1e-20);
}

TEST_CASE("Ei matches the quad series oracle on log-spaced points") {
    const int n = 60;
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        const double mag = std::pow(10.0, -3.0 + t * (std::log10(50.0) + 3.0));
        const double x = -mag;
        const double got = exp_integral_ei(x);
        const double want = oracles::ei_series_quad(x);
        CHECK(std::abs(got - want) <= 1e-10);
    }
}

TEST_CASE("Ei domain errors") {
    CHECK_THROWS_AS(exp_integral_ei(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_ei(1.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_ei(std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
    CHECK_THROWS_AS(exp_integral_ei(-std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK_THROWS_AS(exp_ei_scaled(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_ei_scaled(-1.0), std::domain_error);
}

TEST_CASE("Ei branches agree across the crossover band") {
    // Both branches are valid in a band around the switch point; they must
    // agree there or the crossover is misplaced.
    for (double y = 0.5; y <= 2.0; y += 0.05) {
        const double scaled = exp_ei_scaled(y);        // continued fraction side for y>1
        const double direct = std::exp(y) * exp_integral_ei(-y);
        CHECK(std::abs(scaled - direct) <= 1e-9);
    }
}

TEST_CASE("Ei monotone toward zero for x -> -inf") {
    double prev = exp_integral_ei(-0.001);
    for (double y = 0.01; y <= 40.0; y *= 1.5) {
        const double cur = exp_integral_ei(-y);
        CHECK(cur < 0.0);
        CHECK(cur > prev);  // increasing toward 0
        prev = cur;
    }
}

TEST_CASE("exp_ei_scaled stays finite far into the tail") {
    // e^z overflows alone; the scaled form must not.
    const double v = exp_ei_scaled(1000.0);
    CHECK(v == doctest::Approx(-0.00099900199402388071).epsilon(1e-10));
    CHECK(std::isfinite(exp_ei_scaled(1e18)));
}

TEST_CASE("determinant of trivial matrices") {
    CHECK(det_complex(CMat::identity(3)).real() == doctest::Approx(1.0));
    CHECK(det_complex(CMat::identity(3)).imag() == doctest::Approx(0.0));

    CMat d(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = {0.0, 3.0};
    const cplx det = det_complex(d);
    CHECK(det.real() == doctest::Approx(0.0));
    CHECK(det.imag() == doctest::Approx(6.0));

    CMat upper(3, 3);
    upper(0, 0) = {1, 1};
    upper(0, 1) = {5, -2};
    upper(0, 2) = {0.5, 0};
    upper(1, 1) = {2, 0};
    upper(1, 2) = {-1, 3};
    upper(2, 2) = {0, -1};
    const cplx expect = cplx{1, 1} * cplx{2, 0} * cplx{0, -1};
    const cplx got = det_complex(upper);
    CHECK(std::abs(got - expect) == doctest::Approx(0.0));  // exact, no elimination
}

TEST_CASE("LU determinant equals the cofactor oracle up to 5x5") {
    RandomStream rng(77);
    for (std::size_t n = 1; n <= 5; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            const CMat a = random_cmat(n, rng);
            const cplx lu = det_complex(a);
            const cplx co = oracles::det_cofactor(a);
            CHECK(std::abs(lu - co) <= 1e-10 * std::max(1.0, std::abs(co)));
        }
    }
}

TEST_CASE("log-det route agrees with the direct determinant") {
    RandomStream rng(78);
    for (int rep = 0; rep < 12; ++rep) {
        const CMat a = random_cmat(6, rng);
        const cplx det = det_complex(a);
        const LogDet ld = log_det_complex(a);
        CHECK(ld.log_abs ==
              doctest::Approx(std::log(std::abs(det))).epsilon(1e-8));
        const double phase_diff =
            std::remainder(ld.arg - std::arg(det), 2 * 3.14159265358979323846);
        CHECK(std::abs(phase_diff) <= 1e-8);
    }
    CMat singular(2, 2);
    singular(0, 0) = 1.0;
    singular(0, 1) = 2.0;
    singular(1, 0) = 2.0;
    singular(1, 1) = 4.0;
    CHECK(log_det_complex(singular).log_abs ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("determinant requires a square matrix") {
    CHECK_THROWS_AS(det_complex(CMat(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(log_det_complex(CMat(3, 2)), std::invalid_argument);
}

TEST_CASE("frobenius norm squared") {
    CHECK(frobenius_norm_sq(CMat(3, 4)) == 0.0);

    CMat m(2, 2);
    m(0, 0) = {1, 0};
    m(0, 1) = {0, 1};
    m(1, 0) = {-1, 0};
    m(1, 1) = {0, -1};
    CHECK(frobenius_norm_sq(m) == doctest::Approx(4.0));

    // against a long-double direct sum
    RandomStream rng(79);
    CMat r(5, 7);
    long double direct = 0.0L;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 7; ++j) {
            r(i, j) = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            direct += static_cast<long double>(r(i, j).real()) * r(i, j).real() +
                      static_cast<long double>(r(i, j).imag()) * r(i, j).imag();
        }
    CHECK(std::abs(frobenius_norm_sq(r) - static_cast<double>(direct)) <=
          1e-12 * static_cast<double>(direct));

    // |c|^2 scaling property
    const cplx c{0.3, -1.2};
    CHECK(frobenius_norm_sq(r.scaled(c)) ==
          doctest::Approx(std::norm(c) * frobenius_norm_sq(r)).epsilon(1e-12));
}

TEST_CASE("hermitian transpose is an involution and checks dimensions") {
    RandomStream rng(80);
    CMat a(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            a(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const CMat ahh = a.hermitian().hermitian();
    REQUIRE(ahh.rows() == a.rows());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(ahh(i, j) == a(i, j));

    CHECK_THROWS_AS(CMat(2, 3) * CMat(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(CMat(2, 3) + CMat(3, 2), std::invalid_argument);

    CVec v1(3), v2(4);
    CHECK_THROWS_AS(cdot(v1, v2), std::invalid_argument);
}
