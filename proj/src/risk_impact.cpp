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

#include "capalloc/risk_impact.hpp"

#include <cmath>

#include "capalloc/errors.hpp"
#include "capalloc/math/normal.hpp"
#include "capalloc/risk_measures.hpp"
#include "capalloc/vecops.hpp"

namespace capalloc {

ConditionalElBasis conditional_el_basis(const VasicekParams& params, Factor factor,
                                        const FactorSample& sample) {
    params.validate();
    if (!(params == sample.params))
        throw ValidationError(
            "conditional_el_basis: sample was generated under different parameters");

    const auto& s = factor == Factor::S1 ? sample.s1 : sample.s2;
    const double tau = params.tau;

    ConditionalElBasis basis;
    basis.factor = factor;
    basis.coef_u.resize(s.size());
    basis.coef_complement.resize(s.size());

    double a_own, b_own, a_cross, b_cross;
    if (factor == Factor::S1) {
        a_own = std::sqrt(params.rho1) / std::sqrt(1.0 - params.rho1);
        b_own = params.t1 / std::sqrt(1.0 - params.rho1);
        a_cross = std::sqrt(params.rho2) * tau / std::sqrt(1.0 - params.rho2 * tau * tau);
        b_cross = params.t2 / std::sqrt(1.0 - params.rho2 * tau * tau);
        for (std::size_t k = 0; k < s.size(); ++k) {
            basis.coef_u[k] = math::norm_cdf(a_own * s[k] + b_own);
            basis.coef_complement[k] = math::norm_cdf(a_cross * s[k] + b_cross);
        }
    } else {
        a_own = std::sqrt(params.rho2) / std::sqrt(1.0 - params.rho2);
        b_own = params.t2 / std::sqrt(1.0 - params.rho2);
        a_cross = std::sqrt(params.rho1) * tau / std::sqrt(1.0 - params.rho1 * tau * tau);
        b_cross = params.t1 / std::sqrt(1.0 - params.rho1 * tau * tau);
        for (std::size_t k = 0; k < s.size(); ++k) {
            basis.coef_u[k] = math::norm_cdf(a_cross * s[k] + b_cross);
            basis.coef_complement[k] = math::norm_cdf(a_own * s[k] + b_own);
        }
    }
    return basis;
}

std::vector<double> conditional_el_at(const ConditionalElBasis& basis, double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw ValidationError("conditional_el_at: weight must lie in [0, 1]");
    std::vector<double> m(basis.coef_u.size());
    vecops::axpby(u, basis.coef_u, 1.0 - u, basis.coef_complement, m);
    return m;
}

ConditionalELSample conditional_el_sample(const VasicekParams& params, double u,
                                          Factor factor, const FactorSample& sample) {
    const auto basis = conditional_el_basis(params, factor, sample);
    ConditionalELSample out;
    out.m = conditional_el_at(basis, u);
    out.factor_label = factor == Factor::S1 ? "S1" : "S2";
    return out;
}

namespace {

void check_pairs(std::span<const double> m, std::span<const double> loss) {
    if (m.size() != loss.size() || m.empty())
        throw ValidationError("risk_impact: factor and loss samples must pair up");
}

} // namespace

double risk_impact_sigma(std::span<const double> m, std::span<const double> loss) {
    check_pairs(m, loss);
    const double var_loss = vecops::variance(loss);
    if (!(var_loss > 0.0))
        throw DegeneracyError("risk_impact_sigma: loss variance is zero");
    return vecops::variance(m) / var_loss;
}

double risk_impact_var(std::span<const double> m, std::span<const double> loss,
                       double alpha, const KernelConfig& cfg) {
    check_pairs(m, loss);
    const double mean_loss = vecops::mean(loss);
    if (!(quantile(loss, alpha) > mean_loss))
        throw DegeneracyError("risk_impact_var: quantile does not exceed the mean");

    const double bw = cfg.resolve_bandwidth(loss);
    const SmoothedSample smooth(loss, KernelConfig::fixed(bw));
    const double q_smooth = smooth.quantile(alpha);
    NwWeights w;
    w.compute(loss, bw, q_smooth);
    // Same weights for numerator and denominator: the impact of the loss on
    // itself is exactly one.
    const double numer = w.apply(m) - mean_loss;
    const double denom = w.apply(loss) - mean_loss;
    if (!(denom > 0.0))
        throw DegeneracyError("risk_impact_var: degenerate denominator");
    return numer / denom;
}

double risk_impact_es(std::span<const double> m, std::span<const double> loss,
                      double alpha) {
    check_pairs(m, loss);
    const double q = quantile(loss, alpha);
    const auto [tail_loss_sum, tail_count] = vecops::sum_count_ge(loss, q);
    const double mean_loss = vecops::mean(loss);
    const double denom = tail_loss_sum / static_cast<double>(tail_count) - mean_loss;
    if (!(denom > 0.0))
        throw DegeneracyError("risk_impact_es: degenerate denominator");

    const double tail_m_sum = vecops::sum_where_ge(loss, q, m);
    const double numer = tail_m_sum / static_cast<double>(tail_count) - mean_loss;
    return numer / denom;
}

double quasi_ri_es(std::span<const double> m, std::span<const double> loss, double alpha) {
    check_pairs(m, loss);
    const double denom = ul_es_loss(loss, alpha);
    if (!(denom > 0.0))
        throw DegeneracyError("quasi_ri_es: degenerate loss risk");
    return ul_es_loss(m, alpha) / denom;
}

double quasi_ri_sigma(std::span<const double> m, std::span<const double> loss) {
    check_pairs(m, loss);
    const double sd_loss = std::sqrt(vecops::variance(loss));
    if (!(sd_loss > 0.0))
        throw DegeneracyError("quasi_ri_sigma: degenerate loss risk");
    return std::sqrt(vecops::variance(m)) / sd_loss;
}

double quasi_ri_var(std::span<const double> m, std::span<const double> loss, double alpha) {
    check_pairs(m, loss);
    const double denom = ul_var_loss(loss, alpha);
    if (!(denom > 0.0))
        throw DegeneracyError("quasi_ri_var: degenerate loss risk");
    return ul_var_loss(m, alpha) / denom;
}

RiskImpactReport risk_impact_report(std::span<const double> m, std::span<const double> loss,
                                    double alpha, const KernelConfig& cfg,
                                    std::string factor_label) {
    RiskImpactReport r;
    r.ri_sigma = risk_impact_sigma(m, loss);
    r.ri_var = risk_impact_var(m, loss, alpha, cfg);
    r.ri_es = risk_impact_es(m, loss, alpha);
    r.qri_es = quasi_ri_es(m, loss, alpha);
    r.alpha = alpha;
    r.factor_label = std::move(factor_label);
    return r;
}

} // namespace capalloc
