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

#ifndef CVISAC_KERNELS_HPP
#define CVISAC_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>

// Dense f64 / complex128 inner-loop kernels. A scalar reference
// implementation defines the semantics; an AVX2+FMA variant is selected at
// runtime when the CPU supports it. The two backends are equivalence-tested
// against each other (reassociation changes rounding, so comparisons are
// tolerance-based, not bitwise).
//
// Backend selection order: CVISAC_KERNELS environment variable
// ("scalar"/"avx2") if set, otherwise CPU detection.

namespace cvisac::kern {

struct Ops {
    const char* name;

    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y += alpha*x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // y = alpha*x + beta*y
    void (*axpby)(double alpha, const double* x, double beta, double* y,
                  std::size_t n);
    // y = A*x with A row-major [rows x cols], y length rows
    void (*gemv)(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y);
    // y = A^T*x with A row-major [rows x cols], y length cols
    void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols,
                   const double* x, double* y);
    // A += alpha * x y^T, A row-major [rows x cols]
    void (*ger)(double* a, std::size_t rows, std::size_t cols, double alpha,
                const double* x, const double* y);
    // Bias-corrected Adam update on one flat parameter tensor:
    //   m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g^2
    //   theta -= lr * (m/bc1) / (sqrt(v/bc2) + eps)
    // with bc1 = 1-b1^t, bc2 = 1-b2^t supplied by the caller.
    void (*adam_step)(double* theta, double* m, double* v, const double* g,
                      std::size_t n, double lr, double b1, double b2,
                      double eps, double bc1, double bc2);
    // sum_i conj(a[i])*b[i]
    std::complex<double> (*cdotc)(const std::complex<double>* a,
                                  const std::complex<double>* b,
                                  std::size_t n);
};

enum class Backend { scalar, avx2 };

extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
#endif

// Active kernel table. First call resolves the backend.
const Ops& ops();

Backend active();
bool available(Backend);
std::string backend_name(Backend);

// Force a backend (tests use this to compare variants). Throws
// std::runtime_error if the backend is not available on this machine.
void select(Backend);

}  // namespace cvisac::kern

#endif  // CVISAC_KERNELS_HPP
