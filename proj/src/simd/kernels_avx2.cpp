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

// AVX2/FMA kernels.  This translation unit is compiled with -mavx2 -mfma on
// x86 builds; callers must gate on avx2_supported() before invoking.

#include <limits>

#include "capalloc/simd/kernels.hpp"
#include "kernels_body.hpp"

namespace capalloc::simd {

const Kernels* avx2_kernels_build();

#ifdef CAPALLOC_LANEMATH_AVX2

namespace {

using detail::ElementwiseBody;
using detail::exp_core;
using detail::norm_cdf_core;
using A = detail::LaneOps<__m256d>;
using S = detail::LaneOps<double>;

// (s0+s2)+(s1+s3), matching the scalar reference fold.
inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d t = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(t) + _mm_cvtsd_f64(_mm_unpackhi_pd(t, t));
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d t = _mm_max_pd(lo, hi);
    const double a = _mm_cvtsd_f64(t);
    const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(t, t));
    return S::max(a, b);
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i)
        s += x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i)
        s = S::fma(x[i], y[i], s);
    return s;
}

double dot_centered(const double* x, double cx, const double* y, double cy,
                    std::size_t n) {
    const __m256d vcx = _mm256_set1_pd(cx), vcy = _mm256_set1_pd(cy);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vcx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vcy);
        acc = _mm256_fmadd_pd(dx, dy, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        s = S::fma(x[i] - cx, y[i] - cy, s);
    return s;
}

double sum_sq_dev(const double* x, double c, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vc);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        s = S::fma(x[i] - c, x[i] - c, s);
    return s;
}

double sum_min(const double* x, double cap, std::size_t n) {
    const __m256d vcap = _mm256_set1_pd(cap);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_min_pd(_mm256_loadu_pd(x + i), vcap));
    double s = hsum(acc);
    for (; i < n; ++i)
        s += S::min(x[i], cap);
    return s;
}

double vmax(const double* x, std::size_t n) {
    __m256d acc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    double m = hmax(acc);
    for (; i < n; ++i)
        m = S::max(m, x[i]);
    return m;
}

double sum_gauss(const double* x, double center, double inv_bw, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(center);
    const __m256d vib = _mm256_set1_pd(inv_bw);
    const __m256d vmh = _mm256_set1_pd(-0.5);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d z = _mm256_mul_pd(_mm256_sub_pd(vc, _mm256_loadu_pd(x + i)), vib);
        acc = _mm256_add_pd(acc, exp_core<A>(_mm256_mul_pd(vmh, _mm256_mul_pd(z, z))));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double z = (center - x[i]) * inv_bw;
        s += exp_core<S>(-0.5 * (z * z));
    }
    return s;
}

double sum_norm_cdf(const double* x, double y, double inv_bw, std::size_t n) {
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d vib = _mm256_set1_pd(inv_bw);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d z = _mm256_mul_pd(_mm256_sub_pd(vy, _mm256_loadu_pd(x + i)), vib);
        acc = _mm256_add_pd(acc, norm_cdf_core<A>(z));
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        s += norm_cdf_core<S>((y - x[i]) * inv_bw);
    return s;
}

using Body = ElementwiseBody<__m256d>;

} // namespace

const Kernels* avx2_kernels_build() {
    static const Kernels k = {
        "avx2",      Body::axpby, Body::add_scaled, Body::layer,
        Body::gauss_log_weight,   Body::exp_shifted,
        sum,         dot,         dot_centered,     sum_sq_dev,
        sum_min,     vmax,        sum_gauss,        sum_norm_cdf,
    };
    return &k;
}

#else // !CAPALLOC_LANEMATH_AVX2

const Kernels* avx2_kernels_build() { return nullptr; }

#endif

} // namespace capalloc::simd
