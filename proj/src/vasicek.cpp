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

#include "capalloc/vasicek.hpp"

#include <algorithm>
#include <cmath>

#include "capalloc/errors.hpp"
#include "capalloc/math/normal.hpp"
#include "capalloc/math/rng.hpp"
#include "capalloc/parallel.hpp"
#include "capalloc/vecops.hpp"

namespace capalloc {

namespace {
// Scenario-block size for RNG substreams; fixed so that results never depend
// on the worker count.
constexpr std::size_t kSimBlock = 8192;
} // namespace

void VasicekParams::validate() const {
    if (!std::isfinite(t1) || !std::isfinite(t2))
        throw ValidationError("VasicekParams: thresholds must be finite");
    if (!(rho1 > 0.0 && rho1 < 1.0) || !(rho2 > 0.0 && rho2 < 1.0))
        throw ValidationError("VasicekParams: asset correlations must lie in (0, 1)");
    if (!(tau >= 0.0 && tau <= 1.0))
        throw ValidationError("VasicekParams: factor correlation must lie in [0, 1]");
}

VasicekParams VasicekParams::from_pd(double p1, double p2, double rho1, double rho2,
                                     double tau) {
    VasicekParams p{math::norm_ppf(p1), math::norm_ppf(p2), rho1, rho2, tau};
    p.validate();
    return p;
}

FactorSample simulate(const VasicekParams& params, std::size_t n, std::uint64_t seed) {
    params.validate();
    if (n < 1)
        throw ValidationError("simulate: need at least one scenario");

    FactorSample out;
    out.seed = seed;
    out.params = params;
    out.l1.resize(n);
    out.l2.resize(n);
    out.s1.resize(n);
    out.s2.resize(n);

    const double a1 = std::sqrt(params.rho1) / std::sqrt(1.0 - params.rho1);
    const double b1 = params.t1 / std::sqrt(1.0 - params.rho1);
    const double a2 = std::sqrt(params.rho2) / std::sqrt(1.0 - params.rho2);
    const double b2 = params.t2 / std::sqrt(1.0 - params.rho2);
    const double tau = params.tau;
    const double ortho = std::sqrt(1.0 - tau * tau);

    const std::size_t blocks = (n + kSimBlock - 1) / kSimBlock;
    ThreadPool::instance().for_each(blocks, [&](std::size_t b) {
        math::RandomStream stream(seed, b);
        const std::size_t lo = b * kSimBlock;
        const std::size_t hi = std::min(n, lo + kSimBlock);
        for (std::size_t k = lo; k < hi; ++k) {
            const double z1 = stream.normal();
            const double z2 = stream.normal();
            const double s1 = z1;
            const double s2 = tau * z1 + ortho * z2;
            out.s1[k] = s1;
            out.s2[k] = s2;
            out.l1[k] = math::norm_cdf(a1 * s1 + b1);
            out.l2[k] = math::norm_cdf(a2 * s2 + b2);
        }
    });
    return out;
}

std::vector<double> portfolio_loss(const FactorSample& sample, double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw ValidationError("portfolio_loss: weight must lie in [0, 1]");
    std::vector<double> loss(sample.size());
    vecops::axpby(u, sample.l1, 1.0 - u, sample.l2, loss);
    return loss;
}

double conditional_el_given_factor(const VasicekParams& params, double u, Factor factor,
                                   double s) {
    params.validate();
    if (!(u >= 0.0 && u <= 1.0))
        throw ValidationError("conditional_el_given_factor: weight must lie in [0, 1]");
    const double tau = params.tau;
    double own, cross;
    if (factor == Factor::S1) {
        own = math::norm_cdf((params.t1 + std::sqrt(params.rho1) * s) /
                             std::sqrt(1.0 - params.rho1));
        cross = math::norm_cdf((params.t2 + std::sqrt(params.rho2) * tau * s) /
                               std::sqrt(1.0 - params.rho2 * tau * tau));
        return u * own + (1.0 - u) * cross;
    }
    own = math::norm_cdf((params.t2 + std::sqrt(params.rho2) * s) /
                         std::sqrt(1.0 - params.rho2));
    cross = math::norm_cdf((params.t1 + std::sqrt(params.rho1) * tau * s) /
                           std::sqrt(1.0 - params.rho1 * tau * tau));
    return u * cross + (1.0 - u) * own;
}

double vasicek_quantile(double t, double rho, double alpha) {
    if (!(rho > 0.0 && rho < 1.0))
        throw ValidationError("vasicek_quantile: rho must lie in (0, 1)");
    return math::norm_cdf((t + std::sqrt(rho) * math::norm_ppf(alpha)) /
                          std::sqrt(1.0 - rho));
}

} // namespace capalloc
