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

#include <cmath>

#include "lanemath.hpp"

namespace capalloc::simd::detail {

namespace {
constexpr double kPi = 3.14159265358979323846264338;
constexpr double kSqrt2 = 1.4142135623730950488016887;
} // namespace

const PhiCheb& phi_cheb() {
    static const PhiCheb table = [] {
        PhiCheb t{};
        constexpr int n = PhiCheb::kCount;
        double f[n];
        for (int i = 0; i < n; ++i) {
            const double theta = kPi * (i + 0.5) / n;
            const double x = 4.0 * (std::cos(theta) + 1.0); // node in [0, 8]
            f[i] = 0.5 * std::erfc(-x / kSqrt2);
        }
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += f[i] * std::cos(j * kPi * (i + 0.5) / n);
            t.a[j] = 2.0 * s / n;
        }
        t.a[0] *= 0.5;
        return t;
    }();
    return table;
}

} // namespace capalloc::simd::detail
