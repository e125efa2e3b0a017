/* Copyright 2026 The Capalloc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "capalloc/simd/kernels.hpp"

namespace capalloc::simd {

const Kernels* avx2_kernels_build(); // defined in kernels_avx2.cpp

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
        avx2_kernels_build() != nullptr;
    return ok;
#else
    return false;
#endif
}

const Kernels* avx2_kernels() {
    return avx2_supported() ? avx2_kernels_build() : nullptr;
}

namespace {

std::atomic<const Kernels*> g_forced{nullptr};

const Kernels* env_choice() {
    const char* v = std::getenv("CAPALLOC_SIMD");
    if (v == nullptr)
        return nullptr;
    if (std::strcmp(v, "scalar") == 0)
        return &scalar_kernels();
    if (std::strcmp(v, "avx2") == 0 && avx2_kernels() != nullptr)
        return avx2_kernels();
    return nullptr;
}

const Kernels* default_choice() {
    static const Kernels* k = [] {
        if (const Kernels* env = env_choice())
            return env;
        if (const Kernels* a = avx2_kernels())
            return a;
        return &scalar_kernels();
    }();
    return k;
}

} // namespace

const Kernels& active() {
    if (const Kernels* f = g_forced.load(std::memory_order_relaxed))
        return *f;
    return *default_choice();
}

void force_isa(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        g_forced.store(&scalar_kernels(), std::memory_order_relaxed);
        break;
    case Isa::Avx2:
        g_forced.store(avx2_kernels(), std::memory_order_relaxed);
        break;
    }
}

void clear_forced_isa() { g_forced.store(nullptr, std::memory_order_relaxed); }

} // namespace capalloc::simd
