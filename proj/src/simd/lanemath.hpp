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

// Per-lane math shared by the scalar and AVX2 kernel translation units.  The
// LaneOps trait pins one operation sequence per element, so instantiating the
// same core with width 1 or width 4 yields bit-identical values lane by lane.

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define CAPALLOC_LANEMATH_AVX2 1
#endif

namespace capalloc::simd::detail {

// exp() range reduction and rational approximation constants (Cephes).
inline constexpr double kLog2E = 1.4426950408889634073599;
inline constexpr double kExpC1 = 6.93145751953125e-1;
inline constexpr double kExpC2 = 1.42860682030941723212e-6;
inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000005e0;
inline constexpr double kExpLow = -708.0; // flush-to-zero threshold

template <class V>
struct LaneOps;

template <>
struct LaneOps<double> {
    using vec = double;
    static constexpr std::size_t width = 1;
    static double set1(double v) { return v; }
    static double load(const double* p) { return *p; }
    static void store(double* p, double v) { *p = v; }
    static double add(double a, double b) { return a + b; }
    static double sub(double a, double b) { return a - b; }
    static double mul(double a, double b) { return a * b; }
    static double div(double a, double b) { return a / b; }
    static double fma(double a, double b, double c) { return std::fma(a, b, c); }
    // Tie/NaN handling mirrors vminpd/vmaxpd.
    static double min(double a, double b) { return a < b ? a : b; }
    static double max(double a, double b) { return a > b ? a : b; }
    static double abs(double a) { return std::fabs(a); }
    static double round_nearest(double a) { return std::nearbyint(a); }
    // a < b ? x : y, per lane.
    static double select_lt(double a, double b, double x, double y) {
        return a < b ? x : y;
    }
    // 2^n for integral n in [-1021, 1023].
    static double pow2i(double n) {
        const auto k = static_cast<std::int64_t>(n);
        return std::bit_cast<double>(static_cast<std::uint64_t>(k + 1023) << 52);
    }
};

#ifdef CAPALLOC_LANEMATH_AVX2
template <>
struct LaneOps<__m256d> {
    using vec = __m256d;
    static constexpr std::size_t width = 4;
    static __m256d set1(double v) { return _mm256_set1_pd(v); }
    static __m256d load(const double* p) { return _mm256_loadu_pd(p); }
    static void store(double* p, __m256d v) { _mm256_storeu_pd(p, v); }
    static __m256d add(__m256d a, __m256d b) { return _mm256_add_pd(a, b); }
    static __m256d sub(__m256d a, __m256d b) { return _mm256_sub_pd(a, b); }
    static __m256d mul(__m256d a, __m256d b) { return _mm256_mul_pd(a, b); }
    static __m256d div(__m256d a, __m256d b) { return _mm256_div_pd(a, b); }
    static __m256d fma(__m256d a, __m256d b, __m256d c) {
        return _mm256_fmadd_pd(a, b, c);
    }
    static __m256d min(__m256d a, __m256d b) { return _mm256_min_pd(a, b); }
    static __m256d max(__m256d a, __m256d b) { return _mm256_max_pd(a, b); }
    static __m256d abs(__m256d a) {
        return _mm256_andnot_pd(_mm256_set1_pd(-0.0), a);
    }
    static __m256d round_nearest(__m256d a) {
        return _mm256_round_pd(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    }
    static __m256d select_lt(__m256d a, __m256d b, __m256d x, __m256d y) {
        return _mm256_blendv_pd(y, x, _mm256_cmp_pd(a, b, _CMP_LT_OQ));
    }
    static __m256d pow2i(__m256d n) {
        const __m128i i32 = _mm256_cvtpd_epi32(n);
        __m256i i64 = _mm256_cvtepi32_epi64(i32);
        i64 = _mm256_add_epi64(i64, _mm256_set1_epi64x(1023));
        i64 = _mm256_slli_epi64(i64, 52);
        return _mm256_castsi256_pd(i64);
    }
};
#endif // CAPALLOC_LANEMATH_AVX2

//! exp(x) with flush to zero below kExpLow.  Matches std::exp to a couple of
//! ulps; the bit pattern is identical across lane widths by construction.
template <class O>
typename O::vec exp_core(typename O::vec x) {
    using V = typename O::vec;
    const V low = O::set1(kExpLow);
    const V xc = O::max(x, low);
    const V n = O::round_nearest(O::mul(xc, O::set1(kLog2E)));
    V r = O::fma(n, O::set1(-kExpC1), xc);
    r = O::fma(n, O::set1(-kExpC2), r);
    const V xx = O::mul(r, r);
    V px = O::fma(O::set1(kExpP0), xx, O::set1(kExpP1));
    px = O::fma(px, xx, O::set1(kExpP2));
    px = O::mul(r, px);
    V qx = O::fma(O::set1(kExpQ0), xx, O::set1(kExpQ1));
    qx = O::fma(qx, xx, O::set1(kExpQ2));
    qx = O::fma(qx, xx, O::set1(kExpQ3));
    const V d = O::div(px, O::sub(qx, px));
    V e = O::add(O::set1(1.0), O::add(d, d));
    e = O::mul(e, O::pow2i(n));
    return O::select_lt(x, low, O::set1(0.0), e);
}

//! Chebyshev coefficients of the standard normal CDF on [0, 8], fitted once
//! at startup from erfc (no hard-coded table).  a[0] is pre-halved for the
//! Clenshaw form below.  Absolute interpolation error is below 1e-14; the
//! CDF is treated as exactly 0/1 beyond +-8 (true value within 7e-16).
struct PhiCheb {
    static constexpr int kCount = 40;
    double a[kCount];
};

const PhiCheb& phi_cheb();

template <class O>
typename O::vec phi_clenshaw(typename O::vec t, const double* a, int count) {
    using V = typename O::vec;
    V b1 = O::set1(0.0);
    V b2 = O::set1(0.0);
    const V tt = O::add(t, t);
    for (int k = count - 1; k >= 1; --k) {
        const V bk = O::sub(O::fma(tt, b1, O::set1(a[k])), b2);
        b2 = b1;
        b1 = bk;
    }
    return O::sub(O::fma(t, b1, O::set1(a[0])), b2);
}

//! Standard normal CDF for kernel-smoothing sums.
template <class O>
typename O::vec norm_cdf_core(typename O::vec z) {
    using V = typename O::vec;
    const PhiCheb& tab = phi_cheb();
    const V az = O::abs(z);
    const V t = O::fma(az, O::set1(0.25), O::set1(-1.0));
    V p = phi_clenshaw<O>(t, tab.a, PhiCheb::kCount);
    p = O::select_lt(az, O::set1(8.0), p, O::set1(1.0));
    return O::select_lt(z, O::set1(0.0), O::sub(O::set1(1.0), p), p);
}

} // namespace capalloc::simd::detail
