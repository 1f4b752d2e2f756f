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

#ifndef CVISAC_TESTS_ORACLES_HPP
#define CVISAC_TESTS_ORACLES_HPP

// Test-only reference implementations, deliberately independent of the
// library code paths they validate.

#include <quadmath.h>

#include <complex>
#include <cstddef>
#include <vector>

#include "cvisac/numerics.hpp"

namespace oracles {

// Ei(x) for x < 0 by the ascending series gamma + ln|x| + sum x^k/(k*k!),
// summed in __float128. The alternating terms peak near k = |x| and cancel
// catastrophically in double; quad precision keeps the absolute error below
// 1e-12 up to |x| = 50.
inline double ei_series_quad(double x) {
    const __float128 gamma =
        strtoflt128("0.57721566490153286060651209008240243104", nullptr);
    const __float128 xq = x;
    __float128 sum = 0.0Q;
    __float128 term = 1.0Q;  // x^k / k!
    for (int k = 1; k <= 500; ++k) {
        term *= xq / k;
        const __float128 contrib = term / k;
        sum += contrib;
        if (k > -x && fabsq(contrib) < 1e-40Q * fabsq(sum) + 1e-60Q) break;
    }
    return static_cast<double>(gamma + logq(fabsq(xq)) + sum);
}

// e^z * Ei(-z) in quad precision for moderate z (rate-formula golden values).
inline double exp_ei_scaled_quad(double z) {
    const __float128 v = ei_series_quad(-z);
    return static_cast<double>(expq(static_cast<__float128>(z)) *
                               static_cast<__float128>(v));
}

// Determinant by cofactor expansion, O(n!), usable up to ~6x6.
inline std::complex<double> det_cofactor(const cvisac::CMat& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    std::complex<double> det = 0.0;
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cvisac::CMat minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                minor(i - 1, jj++) = a(i, j);
            }
        }
        det += sign * a(0, k) * det_cofactor(minor);
        sign = -sign;
    }
    return det;
}

}  // namespace oracles

#endif  // CVISAC_TESTS_ORACLES_HPP
