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

/*! \file capalloc/allocation.hpp
    \brief Euler and marginal risk contributions, RORAC, diversification.

    Closed-form Euler contributions exist for sigma_c and ES; contributions to
    VaR go through the kernel chain (Nadaraya-Watson at the smoothed quantile)
    or, separately, a best-linear-prediction approximation.  The linear
    approximation allocates fully but is not RORAC compatible, which the probe
    below can demonstrate.
*/

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "capalloc/kernel.hpp"
#include "capalloc/risk_measures.hpp"
#include "capalloc/scenario.hpp"

namespace capalloc {

enum class ContribMethod {
    StdDevClosedForm,
    ESDirect,
    VaRKernel,
    VaRLinearApprox,
    Marginal,
    MarginalNormalized,
};

struct ContributionReport {
    std::vector<double> per_asset; //!< risk units, already scaled by u_i
    double total = 0.0;            //!< portfolio risk under the method's estimator
    double residual = 0.0;         //!< total - sum(per_asset)
    ContribMethod method{};
    bool degenerate = false; //!< zero portfolio variance (sigma_c only)
};

const char* contrib_method_name(ContribMethod m);

//! sigma_c contributions: c * u_i * cov[X_i, X] / sd[X].  Zero portfolio
//! variance yields all-zero contributions with the degenerate flag set.
ContributionReport euler_stddev_contrib(const ScenarioMatrix& matrix,
                                        const PortfolioWeights& weights, double c);

//! ES contributions: -u_i * E[X_i | X <= -VaR_alpha(X)], ties included; the
//! shared conditioning set makes the allocation exact.
ContributionReport euler_es_contrib(const ScenarioMatrix& matrix,
                                    const PortfolioWeights& weights, double alpha);

struct VarKernelInfo {
    double bandwidth = 0.0;
    double query_point = 0.0; //!< -VaR of the smoothed portfolio outcome
};

//! VaR contributions via the smoothed empirical measure:
//! -u_i * NW(X_i | X = query), query = -VaR_alpha(smoothed X).  The total is
//! the smoothed VaR; the residual is the smoothing term's own contribution
//! and is reported, not redistributed, unless rescale is set.
ContributionReport euler_var_contrib_kernel(const ScenarioMatrix& matrix,
                                            const PortfolioWeights& weights, double alpha,
                                            const KernelConfig& cfg, bool rescale = false,
                                            VarKernelInfo* info = nullptr);

//! Best-linear-prediction approximation:
//! u_i * (cov[X_i,X]/var[X] * UL_VaR(X) - E[X_i]); allocates fully.
ContributionReport euler_var_contrib_linear(const ScenarioMatrix& matrix,
                                            const PortfolioWeights& weights, double alpha);

//! With-without contributions rho(X) - rho(X - u_i X_i); generally do not sum
//! to rho(X).
ContributionReport marginal_contrib(const RiskMeasureSpec& spec, const ScenarioMatrix& matrix,
                                    const PortfolioWeights& weights);

//! Marginal contributions rescaled to full allocation.
ContributionReport normalized_marginal_contrib(const RiskMeasureSpec& spec,
                                               const ScenarioMatrix& matrix,
                                               const PortfolioWeights& weights);

//! Lifts VaR/ES contributions to their unexpected-loss variant: asset i gains
//! u_i E[X_i], the total gains E[X].
ContributionReport apply_unexpected_loss(ContributionReport report,
                                         const ScenarioMatrix& matrix,
                                         const PortfolioWeights& weights);

struct RoracReport {
    double portfolio = 0.0;
    bool portfolio_defined = false;
    std::vector<double> per_asset;        //!< NaN where undefined
    std::vector<std::uint8_t> defined;    //!< 1 where capital > 0
};

//! Expected profit over allocated capital, per asset and portfolio wide.
RoracReport rorac(const ScenarioMatrix& matrix, const PortfolioWeights& weights,
                  const ContributionReport& contributions);

enum class ProbeVerdict { Holds, Fails, Indeterminate };

struct ProbePoint {
    double h;
    ProbeVerdict verdict;
};

//! Checks, for each step h, whether RORAC(X_i|X) > RORAC(X) is followed by
//! RORAC improving when u_i grows by the factor (1+h).  When the hypothesis
//! is not strictly satisfied the verdict is Indeterminate.
std::vector<ProbePoint> rorac_compatibility_probe(const RiskMeasureSpec& spec,
                                                  const ScenarioMatrix& matrix,
                                                  const PortfolioWeights& weights,
                                                  std::size_t asset,
                                                  std::span<const double> h_grid,
                                                  const ContributionReport& contributions);

//! rho(X) / sum_i rho(u_i X_i); <= 1 for sub-additive measures.
double diversification_index(const RiskMeasureSpec& spec, const ScenarioMatrix& matrix,
                             const PortfolioWeights& weights);

struct MarginalDiversification {
    std::vector<double> index;         //!< contribution_i / rho(u_i X_i)
    std::vector<std::uint8_t> defined; //!< 0 where the stand-alone risk is not positive
};

MarginalDiversification marginal_diversification_index(const RiskMeasureSpec& spec,
                                                       const ScenarioMatrix& matrix,
                                                       const PortfolioWeights& weights,
                                                       const ContributionReport& contributions);

//! Relative gap between closed-form contributions (sigma_c or ES) and central
//! finite differences of u -> rho(X(u)) on the same scenario set.
std::vector<double> gradient_check(const RiskMeasureSpec& spec, const ScenarioMatrix& matrix,
                                   const PortfolioWeights& weights, double eps);

} // namespace capalloc
