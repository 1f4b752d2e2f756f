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

#ifndef CVISAC_NUMERICS_HPP
#define CVISAC_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <vector>

// Complex vector/matrix kernels and special functions. Deliberately minimal:
// only the pieces the link-rate, SINR and sensing-information formulas need.

namespace cvisac {

using cplx = std::complex<double>;

// Fixed-length complex vector. Length is set at construction and never
// changes; binary operations check agreement.
class CVec {
  public:
    CVec() = default;
    explicit CVec(std::size_t n) : v_(n) {}

    std::size_t size() const { return v_.size(); }
    cplx& operator[](std::size_t i) { return v_[i]; }
    const cplx& operator[](std::size_t i) const { return v_[i]; }
    cplx* data() { return v_.data(); }
    const cplx* data() const { return v_.data(); }

    // ||v||^2
    double norm_sq() const;

  private:
    std::vector<cplx> v_;
};

// sum_i conj(a[i]) * b[i]; throws std::invalid_argument on length mismatch.
cplx cdot(const CVec& a, const CVec& b);

// Row-major complex matrix with immutable dimensions.
class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), v_(rows * cols) {}

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const {
        return v_[i * cols_ + j];
    }
    cplx* row(std::size_t i) { return v_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return v_.data() + i * cols_; }
    cplx* data() { return v_.data(); }
    const cplx* data() const { return v_.data(); }

    // Conjugate transpose.
    CMat hermitian() const;

    CMat operator*(const CMat& rhs) const;  // dimension-checked
    CMat operator+(const CMat& rhs) const;
    CMat scaled(cplx factor) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> v_;
};

// Determinant via LU factorization with partial pivoting. Throws
// std::invalid_argument for non-square input.
cplx det_complex(const CMat& a);

// log|det| and arg(det) accumulated during the same elimination; avoids
// overflow for matrices whose determinant magnitude exceeds double range.
// log_abs is -inf for a singular matrix.
struct LogDet {
    double log_abs;
    double arg;
};
LogDet log_det_complex(const CMat& a);

// sum of squared moduli of all entries.
double frobenius_norm_sq(const CMat& a);

// Exponential integral Ei(x) for x < 0 only (the link-rate formula never
// needs other arguments). Absolute error below 1e-10 across the domain.
// Throws std::domain_error for x >= 0 or non-finite x.
double exp_integral_ei(double x);

// e^z * Ei(-z) for z > 0, evaluated without forming the overflowing e^z.
// This is the combination the mmWave rate formula consumes.
double exp_ei_scaled(double z);

}  // namespace cvisac

#endif  // CVISAC_NUMERICS_HPP
