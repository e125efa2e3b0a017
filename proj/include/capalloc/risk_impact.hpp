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

/*! \file capalloc/risk_impact.hpp
    \brief Non-linear impact of risk factors on portfolio risk.

    The impact of a factor set S on a loss L is the (normalized) risk
    contribution of the conditional expectation E[L|S] to the risk of L, for
    translation-invariant measures: the variance ratio for sigma, and
    tail-conditional forms for VaR and ES.  The quasi variant replaces the
    contribution by the stand-alone risk of E[L|S].

    Callers supply the conditional-expectation sample paired scenario-wise
    with the loss sample; no internal multivariate regression is attempted.
*/

#pragma once

#include <span>
#include <string>
#include <vector>

#include "capalloc/kernel.hpp"
#include "capalloc/vasicek.hpp"

namespace capalloc {

//! E[L|S] evaluated per scenario, paired with the loss sample by index.
struct ConditionalELSample {
    std::vector<double> m;
    std::string factor_label;
};

//! Scenario transforms with m(u) = u * coef_u + (1-u) * coef_complement;
//! reusable across a weight grid.
struct ConditionalElBasis {
    std::vector<double> coef_u;
    std::vector<double> coef_complement;
    Factor factor{};
};

ConditionalElBasis conditional_el_basis(const VasicekParams& params, Factor factor,
                                        const FactorSample& sample);

std::vector<double> conditional_el_at(const ConditionalElBasis& basis, double u);

//! Analytic E[L(u)|factor] per scenario; rejects a sample generated under
//! different parameters.
ConditionalELSample conditional_el_sample(const VasicekParams& params, double u,
                                          Factor factor, const FactorSample& sample);

//! var[E[L|S]] / var[L], in [0, 1].
double risk_impact_sigma(std::span<const double> m, std::span<const double> loss);

//! (E[E[L|S] | L = q_alpha(L)] - E[L]) / (E[L | L = q_alpha(L)] - E[L]), both
//! conditional expectations through the same kernel chain at the smoothed
//! quantile of L, with the bandwidth resolved on the L sample.
double risk_impact_var(std::span<const double> m, std::span<const double> loss,
                       double alpha, const KernelConfig& cfg);

//! (E[E[L|S] | L >= q_alpha(L)] - E[L]) / (E[L | L >= q_alpha(L)] - E[L]).
double risk_impact_es(std::span<const double> m, std::span<const double> loss,
                      double alpha);

//! Quasi impacts: stand-alone risk of E[L|S] over the risk of L, each with
//! its own quantile.  ES is the default reporting choice; the sigma and VaR
//! variants sit behind explicit calls.
double quasi_ri_es(std::span<const double> m, std::span<const double> loss, double alpha);
double quasi_ri_sigma(std::span<const double> m, std::span<const double> loss);
double quasi_ri_var(std::span<const double> m, std::span<const double> loss, double alpha);

struct RiskImpactReport {
    double ri_sigma = 0.0;
    double ri_var = 0.0;
    double ri_es = 0.0;
    double qri_es = 0.0;
    double alpha = 0.0;
    std::string factor_label;
};

RiskImpactReport risk_impact_report(std::span<const double> m, std::span<const double> loss,
                                    double alpha, const KernelConfig& cfg,
                                    std::string factor_label);

} // namespace capalloc
