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

// Element-wise kernel bodies shared by the scalar and AVX2 translation units.
// Tails always run through LaneOps<double>, which evaluates the same
// per-element sequence as the vector main loop.

#pragma once

#include <cstddef>

#include "lanemath.hpp"

namespace capalloc::simd::detail {

template <class V>
struct ElementwiseBody {
    using O = LaneOps<V>;
    using S = LaneOps<double>;

    static void axpby(double a, const double* x, double b, const double* y, double* out,
                      std::size_t n) {
        const V va = O::set1(a), vb = O::set1(b);
        std::size_t i = 0;
        for (; i + O::width <= n; i += O::width)
            O::store(out + i, O::fma(va, O::load(x + i), O::mul(vb, O::load(y + i))));
        for (; i < n; ++i)
            out[i] = S::fma(a, x[i], S::mul(b, y[i]));
    }

    static void add_scaled(double a, const double* x, double* acc, std::size_t n) {
        const V va = O::set1(a);
        std::size_t i = 0;
        for (; i + O::width <= n; i += O::width)
            O::store(acc + i, O::fma(va, O::load(x + i), O::load(acc + i)));
        for (; i < n; ++i)
            acc[i] = S::fma(a, x[i], acc[i]);
    }

    static void layer(const double* x, double lo, double hi, double* out, std::size_t n) {
        const V vlo = O::set1(lo), vhi = O::set1(hi);
        std::size_t i = 0;
        for (; i + O::width <= n; i += O::width) {
            const V v = O::load(x + i);
            O::store(out + i, O::sub(O::min(v, vhi), O::min(v, vlo)));
        }
        for (; i < n; ++i)
            out[i] = S::sub(S::min(x[i], hi), S::min(x[i], lo));
    }

    static void gauss_log_weight(const double* x, double center, double inv_bw,
                                 double* out, std::size_t n) {
        const V vc = O::set1(center), vib = O::set1(inv_bw), vmh = O::set1(-0.5);
        std::size_t i = 0;
        for (; i + O::width <= n; i += O::width) {
            const V z = O::mul(O::sub(O::load(x + i), vc), vib);
            O::store(out + i, O::mul(vmh, O::mul(z, z)));
        }
        for (; i < n; ++i) {
            const double z = S::mul(S::sub(x[i], center), inv_bw);
            out[i] = S::mul(-0.5, S::mul(z, z));
        }
    }

    static void exp_shifted(const double* x, double shift, double* out, std::size_t n) {
        const V vs = O::set1(shift);
        std::size_t i = 0;
        for (; i + O::width <= n; i += O::width)
            O::store(out + i, exp_core<O>(O::add(O::load(x + i), vs)));
        for (; i < n; ++i)
            out[i] = exp_core<S>(S::add(x[i], shift));
    }
};

} // namespace capalloc::simd::detail
