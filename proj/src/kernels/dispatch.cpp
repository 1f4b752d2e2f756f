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

#include "cvisac/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace cvisac::kern {
namespace {

bool cpu_has_avx2_fma() {
#if defined(CVISAC_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect() {
    if (const char* env = std::getenv("CVISAC_KERNELS")) {
        const std::string s(env);
        if (s == "scalar") return Backend::scalar;
        if (s == "avx2" && cpu_has_avx2_fma()) return Backend::avx2;
        return Backend::scalar;
    }
    return cpu_has_avx2_fma() ? Backend::avx2 : Backend::scalar;
}

std::atomic<const Ops*> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const Ops* table_for(Backend b) {
#if defined(CVISAC_HAVE_AVX2)
    if (b == Backend::avx2) return &avx2_ops;
#endif
    return &scalar_ops;
}

}  // namespace

bool available(Backend b) {
    return b == Backend::scalar || cpu_has_avx2_fma();
}

std::string backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void select(Backend b) {
    if (!available(b))
        throw std::runtime_error("kernel backend not available: " +
                                 backend_name(b));
    g_backend.store(b);
    g_active.store(table_for(b));
}

const Ops& ops() {
    const Ops* t = g_active.load();
    if (t == nullptr) {
        const Backend b = detect();
        g_backend.store(b);
        t = table_for(b);
        g_active.store(t);
    }
    return *t;
}

Backend active() {
    ops();
    return g_backend.load();
}

}  // namespace cvisac::kern
