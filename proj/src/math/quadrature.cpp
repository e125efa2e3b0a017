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

#include "capalloc/math/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "capalloc/errors.hpp"
#include "capalloc/math/normal.hpp"

namespace capalloc::math {

namespace {
constexpr double kPiQuarterInv = 0.7511255444649424828587030; // pi^(-1/4)
constexpr double kSqrtPi = 1.7724538509055160272981675;
} // namespace

GaussHermite::GaussHermite(std::size_t n) {
    if (n < 1)
        throw ValidationError("GaussHermite: need at least one node");
    nodes_.resize(n);
    weights_.resize(n);

    // Roots of the n-th Hermite polynomial via Newton iteration on the
    // orthonormal recurrence; only the positive half is computed, the rest
    // follows by symmetry.
    const std::size_t m = (n + 1) / 2;
    std::vector<double> roots(m, 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * roots[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * roots[1];
        } else {
            z = 2.0 * z - roots[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = kPiQuarterInv;
            double p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-14 * (1.0 + std::fabs(z)))
                break;
        }
        roots[i] = z;
        // Physicists' weight 2 / pp^2, converted below.
        const double w = 2.0 / (pp * pp);
        // Expectation form: node sqrt(2) z, weight w / sqrt(pi).
        nodes_[i] = kSqrt2 * z;
        weights_[i] = w / kSqrtPi;
        nodes_[n - 1 - i] = -nodes_[i];
        weights_[n - 1 - i] = weights_[i];
    }
}

const GaussHermite& GaussHermite::n64() {
    static const GaussHermite rule(64);
    return rule;
}

} // namespace capalloc::math
