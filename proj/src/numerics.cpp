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

#include "cvisac/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvisac/kernels.hpp"

namespace cvisac {

namespace {

// An interleaved complex buffer is bit-compatible with a double buffer of
// twice the length (guaranteed layout of std::complex).
double sumsq_interleaved(const cplx* p, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(p);
    return kern::ops().dot(d, d, 2 * n);
}

}  // namespace

double CVec::norm_sq() const { return sumsq_interleaved(v_.data(), v_.size()); }

cplx cdot(const CVec& a, const CVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cdot: length mismatch");
    return kern::ops().cdotc(a.data(), b.data(), a.size());
}

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::hermitian() const {
    CMat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMat CMat::operator*(const CMat& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("CMat multiply: dimension mismatch");
    CMat out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx{}) continue;
            const cplx* brow = rhs.row(k);
            cplx* orow = out.row(i);
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                orow[j] += aik * brow[j];
        }
    }
    return out;
}

CMat CMat::operator+(const CMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("CMat add: dimension mismatch");
    CMat out(rows_, cols_);
    for (std::size_t i = 0; i < v_.size(); ++i) out.v_[i] = v_[i] + rhs.v_[i];
    return out;
}

CMat CMat::scaled(cplx factor) const {
    CMat out(rows_, cols_);
    for (std::size_t i = 0; i < v_.size(); ++i) out.v_[i] = v_[i] * factor;
    return out;
}

double frobenius_norm_sq(const CMat& a) {
    return sumsq_interleaved(a.data(), a.rows() * a.cols());
}

namespace {

// Shared LU elimination. Calls `visit(pivot)` for each pivot and reports the
// row-swap parity; returns false if a pivot column is exactly zero.
template <typename Visit>
bool lu_pivots(const CMat& a, Visit&& visit, bool& odd_swaps) {
    const std::size_t n = a.rows();
    std::vector<cplx> w(a.data(), a.data() + n * n);
    auto at = [&](std::size_t i, std::size_t j) -> cplx& {
        return w[i * n + j];
    };
    odd_swaps = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::norm(at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = std::norm(at(i, k));
            if (m > best) {
                best = m;
                p = i;
            }
        }
        if (best == 0.0) return false;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(k, j), at(p, j));
            odd_swaps = !odd_swaps;
        }
        const cplx pivot = at(k, k);
        visit(pivot);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = at(i, k) / pivot;
            if (f == cplx{}) continue;
            at(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j)
                at(i, j) -= f * at(k, j);
        }
    }
    return true;
}

}  // namespace

cplx det_complex(const CMat& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("det_complex: matrix must be square");
    if (a.rows() == 0) return 1.0;
    cplx det = 1.0;
    bool odd = false;
    if (!lu_pivots(a, [&](cplx p) { det *= p; }, odd)) return 0.0;
    return odd ? -det : det;
}

LogDet log_det_complex(const CMat& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("log_det_complex: matrix must be square");
    double log_abs = 0.0;
    double arg = 0.0;
    bool odd = false;
    const bool ok = lu_pivots(
        a,
        [&](cplx p) {
            log_abs += 0.5 * std::log(std::norm(p));
            arg += std::arg(p);
        },
        odd);
    if (!ok) return {-std::numeric_limits<double>::infinity(), 0.0};
    if (odd) arg += 3.14159265358979323846;
    arg = std::remainder(arg, 2.0 * 3.14159265358979323846);
    return {log_abs, arg};
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Ascending series Ei(x) = gamma + ln|x| + sum_k x^k/(k*k!), accurate for
// small |x|; alternating-term cancellation rules it out for large |x|.
double ei_series(double x) {
    double sum = 0.0;
    double term = 1.0;  // x^k / k!
    for (int k = 1; k <= 200; ++k) {
        term *= x / k;
        const double contrib = term / k;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return kEulerGamma + std::log(std::abs(x)) + sum;
}

// Continued fraction for E1(y)*e^y, y > 0 (modified Lentz). Returns the
// scaled value so callers can avoid overflow; E1(y) = e^{-y} * cf_e1(y).
double cf_e1_scaled(double y, int max_iter = 200) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-16;
    double b = y + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iter; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + a / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

// Series/continued-fraction crossover. The series keeps full precision for
// |x| <= 1 and the fraction converges quickly beyond it.
constexpr double kEiCrossover = 1.0;

}  // namespace

double exp_integral_ei(double x) {
    if (!std::isfinite(x) || x >= 0.0)
        throw std::domain_error("exp_integral_ei: argument must be finite and < 0");
    const double y = -x;
    if (y <= kEiCrossover) return ei_series(x);
    // Ei(x) = -E1(-x)
    return -std::exp(-y) * cf_e1_scaled(y);
}

double exp_ei_scaled(double z) {
    if (!std::isfinite(z) || z <= 0.0)
        throw std::domain_error("exp_ei_scaled: argument must be finite and > 0");
    if (z <= kEiCrossover) return std::exp(z) * ei_series(-z);
    return -cf_e1_scaled(z);
}

}  // namespace cvisac
