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

/*! \file capalloc/simd/kernels.hpp
    \brief Inner-loop kernels: scalar reference plus AVX2 variant selected at
           runtime.

    The contract between variants is bit-exactness, not mere closeness:

      - element-wise kernels evaluate the same operation sequence per element
        (explicit fused multiply-adds, shared polynomial cores), and
      - reduction kernels accumulate four interleaved partial sums folded as
        (s0 + s2) + (s1 + s3), followed by a sequential tail.

    Both kernel translation units are built with -ffp-contract=off so no
    compiler-introduced fusion can break the contract.  The equivalence test
    suite asserts exact equality between variants.
*/

#pragma once

#include <cstddef>

namespace capalloc::simd {

enum class Isa { Scalar, Avx2 };

struct Kernels {
    const char* name;

    // out[i] = a*x[i] + b*y[i]
    void (*axpby)(double a, const double* x, double b, const double* y, double* out,
                  std::size_t n);
    // acc[i] += a*x[i]
    void (*add_scaled)(double a, const double* x, double* acc, std::size_t n);
    // out[i] = min(x[i], hi) - min(x[i], lo)
    void (*layer)(const double* x, double lo, double hi, double* out, std::size_t n);
    // out[i] = -((x[i]-center)*inv_bw)^2 / 2
    void (*gauss_log_weight)(const double* x, double center, double inv_bw, double* out,
                             std::size_t n);
    // out[i] = exp(x[i] + shift), flushed to zero below -708
    void (*exp_shifted)(const double* x, double shift, double* out, std::size_t n);

    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum_i (x[i]-cx)*(y[i]-cy)
    double (*dot_centered)(const double* x, double cx, const double* y, double cy,
                           std::size_t n);
    // sum_i (x[i]-c)^2
    double (*sum_sq_dev)(const double* x, double c, std::size_t n);
    // sum_i min(x[i], cap)
    double (*sum_min)(const double* x, double cap, std::size_t n);
    // max over x; -inf for n == 0
    double (*max)(const double* x, std::size_t n);
    // sum_i exp(-((center-x[i])*inv_bw)^2 / 2)
    double (*sum_gauss)(const double* x, double center, double inv_bw, std::size_t n);
    // sum_i Phi((y-x[i])*inv_bw), Phi the standard normal CDF
    double (*sum_norm_cdf)(const double* x, double y, double inv_bw, std::size_t n);
};

//! Scalar reference implementation; always available.
const Kernels& scalar_kernels();

//! AVX2 implementation, or nullptr if this build/CPU cannot run it.
const Kernels* avx2_kernels();

bool avx2_supported();

//! Runtime-selected kernel set.  Honors force_isa() and, failing that, the
//! CAPALLOC_SIMD environment variable ("scalar" or "avx2"), then CPU detection.
const Kernels& active();

void force_isa(Isa isa);
void clear_forced_isa();

} // namespace capalloc::simd
