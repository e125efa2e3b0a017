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

// Scalar reference kernels.  Reductions keep four interleaved partial sums
// folded as (s0+s2)+(s1+s3) to mirror the AVX2 horizontal add; see
// capalloc/simd/kernels.hpp for the equivalence contract.

#include <limits>

#include "capalloc/simd/kernels.hpp"
#include "kernels_body.hpp"

namespace capalloc::simd {
namespace {

using detail::ElementwiseBody;
using detail::exp_core;
using detail::norm_cdf_core;
using S = detail::LaneOps<double>;

double sum(const double* x, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i];
        s1 += x[i + 1];
        s2 += x[i + 2];
        s3 += x[i + 3];
    }
    double s = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i)
        s += x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 = S::fma(x[i], y[i], s0);
        s1 = S::fma(x[i + 1], y[i + 1], s1);
        s2 = S::fma(x[i + 2], y[i + 2], s2);
        s3 = S::fma(x[i + 3], y[i + 3], s3);
    }
    double s = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i)
        s = S::fma(x[i], y[i], s);
    return s;
}

double dot_centered(const double* x, double cx, const double* y, double cy,
                    std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 = S::fma(x[i] - cx, y[i] - cy, s0);
        s1 = S::fma(x[i + 1] - cx, y[i + 1] - cy, s1);
        s2 = S::fma(x[i + 2] - cx, y[i + 2] - cy, s2);
        s3 = S::fma(x[i + 3] - cx, y[i + 3] - cy, s3);
    }
    double s = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i)
        s = S::fma(x[i] - cx, y[i] - cy, s);
    return s;
}

double sum_sq_dev(const double* x, double c, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 = S::fma(x[i] - c, x[i] - c, s0);
        s1 = S::fma(x[i + 1] - c, x[i + 1] - c, s1);
        s2 = S::fma(x[i + 2] - c, x[i + 2] - c, s2);
        s3 = S::fma(x[i + 3] - c, x[i + 3] - c, s3);
    }
    double s = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i)
        s = S::fma(x[i] - c, x[i] - c, s);
    return s;
}

double sum_min(const double* x, double cap, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += S::min(x[i], cap);
        s1 += S::min(x[i + 1], cap);
        s2 += S::min(x[i + 2], cap);
        s3 += S::min(x[i + 3], cap);
    }
    double s = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i)
        s += S::min(x[i], cap);
    return s;
}

double vmax(const double* x, std::size_t n) {
    const double ninf = -std::numeric_limits<double>::infinity();
    double m0 = ninf, m1 = ninf, m2 = ninf, m3 = ninf;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        m0 = S::max(m0, x[i]);
        m1 = S::max(m1, x[i + 1]);
        m2 = S::max(m2, x[i + 2]);
        m3 = S::max(m3, x[i + 3]);
    }
    double m = S::max(S::max(m0, m2), S::max(m1, m3));
    for (; i < n; ++i)
        m = S::max(m, x[i]);
    return m;
}

double sum_gauss(const double* x, double center, double inv_bw, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const double z0 = (center - x[i]) * inv_bw;
        const double z1 = (center - x[i + 1]) * inv_bw;
        const double z2 = (center - x[i + 2]) * inv_bw;
        const double z3 = (center - x[i + 3]) * inv_bw;
        s0 += exp_core<S>(-0.5 * (z0 * z0));
        s1 += exp_core<S>(-0.5 * (z1 * z1));
        s2 += exp_core<S>(-0.5 * (z2 * z2));
        s3 += exp_core<S>(-0.5 * (z3 * z3));
    }
    double s = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i) {
        const double z = (center - x[i]) * inv_bw;
        s += exp_core<S>(-0.5 * (z * z));
    }
    return s;
}

double sum_norm_cdf(const double* x, double y, double inv_bw, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += norm_cdf_core<S>((y - x[i]) * inv_bw);
        s1 += norm_cdf_core<S>((y - x[i + 1]) * inv_bw);
        s2 += norm_cdf_core<S>((y - x[i + 2]) * inv_bw);
        s3 += norm_cdf_core<S>((y - x[i + 3]) * inv_bw);
    }
    double s = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i)
        s += norm_cdf_core<S>((y - x[i]) * inv_bw);
    return s;
}

using Body = ElementwiseBody<double>;

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {
        "scalar",    Body::axpby, Body::add_scaled, Body::layer,
        Body::gauss_log_weight,   Body::exp_shifted,
        sum,         dot,         dot_centered,     sum_sq_dev,
        sum_min,     vmax,        sum_gauss,        sum_norm_cdf,
    };
    return k;
}

} // namespace capalloc::simd
