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

/*! \file capalloc/risk_measures.hpp
    \brief Portfolio risk measures on profit/loss samples.

    Quantiles follow the lower (min) convention: the gamma-quantile is the
    ceil(gamma*N)-th order statistic, no interpolation.  Moments use the
    population convention (divide by N), matching the empirical-measure
    plug-in.  All measures are homogeneous of degree 1.
*/

#pragma once

#include <span>

namespace capalloc {

enum class MeasureKind { StdDev, VaR, ES };

//! Selects a risk measure: sigma_c, VaR(alpha) or ES(alpha), optionally as
//! the unexpected-loss variant (measure net of the expected value).
class RiskMeasureSpec {
public:
    static RiskMeasureSpec std_dev(double c);
    static RiskMeasureSpec value_at_risk(double alpha);
    static RiskMeasureSpec expected_shortfall(double alpha);

    //! Unexpected-loss variant; rejected for StdDev, which is already
    //! translation invariant.
    RiskMeasureSpec with_unexpected_loss() const;

    MeasureKind kind() const { return kind_; }
    double c() const { return param_; }
    double alpha() const { return param_; }
    bool unexpected_loss() const { return unexpected_loss_; }
    const char* name() const;

private:
    RiskMeasureSpec(MeasureKind kind, double param, bool ul)
        : kind_(kind), param_(param), unexpected_loss_(ul) {}
    MeasureKind kind_;
    double param_;
    bool unexpected_loss_;
};

//! Lower empirical quantile: min{y in sample : P[Y <= y] >= gamma}.
double quantile(std::span<const double> sample, double gamma);

//! Same on an ascending pre-sorted sample, O(1).
double quantile_sorted(std::span<const double> sorted, double gamma);

//! VaR_alpha(X) = gamma-quantile of -X.
double value_at_risk(std::span<const double> pl_sample, double alpha);

//! ES_alpha(X) = -E[X | X <= -VaR_alpha(X)], ties included.
double expected_shortfall(std::span<const double> pl_sample, double alpha);

//! sigma_c(X) = c * population standard deviation.
double std_dev_measure(std::span<const double> pl_sample, double c);

//! One-tailed Chebychev calibration: solves 1/(1+c^2) = 1-alpha.
double chebychev_c(double alpha);

//! UL variant: base measure plus the sample mean (VaR/ES only).
double unexpected_loss(std::span<const double> pl_sample, const RiskMeasureSpec& spec);

//! Evaluates any spec (including UL variants) on a profit/loss sample.
double evaluate(const RiskMeasureSpec& spec, std::span<const double> pl_sample);

//! Relative degree-1 homogeneity discrepancy at scale h.
double homogeneity_check(const RiskMeasureSpec& spec, std::span<const double> pl_sample,
                         double h);

// Loss-side conveniences used by the tranche and factor-impact modules:
// for a loss variable, UL_VaR = q_alpha(L) - E[L] and
// UL_ES = E[L | L >= q_alpha(L)] - E[L].
double ul_var_loss(std::span<const double> losses, double alpha);
double ul_es_loss(std::span<const double> losses, double alpha);

} // namespace capalloc
