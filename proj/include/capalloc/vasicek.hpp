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

/*! \file capalloc/vasicek.hpp
    \brief Two-factor asymptotic Vasicek portfolio model.

    Two homogeneous sub-portfolios with loss fractions
    L_i = Phi((t_i + sqrt(rho_i) S_i) / sqrt(1 - rho_i)), the systematic
    factors S_1, S_2 jointly standard normal with correlation tau.  The
    portfolio mixes them as L(u) = u L_1 + (1-u) L_2.
*/

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace capalloc {

struct VasicekParams {
    double t1;   //!< default threshold, sub-portfolio 1
    double t2;   //!< default threshold, sub-portfolio 2
    double rho1; //!< asset correlation in (0, 1)
    double rho2; //!< asset correlation in (0, 1)
    double tau;  //!< factor correlation in [0, 1]

    void validate() const;

    //! Thresholds from default probabilities: t_i = Phi^{-1}(p_i).
    static VasicekParams from_pd(double p1, double p2, double rho1, double rho2,
                                 double tau);

    bool operator==(const VasicekParams&) const = default;
};

//! One simulated joint sample of factors and loss fractions, plus the inputs
//! that produced it (so downstream analytics can reject mismatched use).
struct FactorSample {
    std::vector<double> l1, l2; //!< loss fractions in (0, 1)
    std::vector<double> s1, s2; //!< standard normal factor draws
    std::uint64_t seed = 0;
    VasicekParams params{};

    std::size_t size() const { return l1.size(); }
};

enum class Factor { S1, S2 };

//! Simulates N scenarios; deterministic in (params, n, seed) and independent
//! of the worker count thanks to per-block substreams.
FactorSample simulate(const VasicekParams& params, std::size_t n, std::uint64_t seed);

//! L(u) = u L1 + (1-u) L2 per scenario; u in [0, 1].
std::vector<double> portfolio_loss(const FactorSample& sample, double u);

//! E[L(u) | factor = s], in closed form.
double conditional_el_given_factor(const VasicekParams& params, double u, Factor factor,
                                   double s);

//! Exact alpha-quantile of a single-name Vasicek loss:
//! Phi((t + sqrt(rho) Phi^{-1}(alpha)) / sqrt(1 - rho)).
double vasicek_quantile(double t, double rho, double alpha);

} // namespace capalloc
