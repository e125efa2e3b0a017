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

#include "capalloc/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "capalloc/errors.hpp"
#include "capalloc/vecops.hpp"

namespace capalloc {

RiskMeasureSpec RiskMeasureSpec::std_dev(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw ValidationError("RiskMeasureSpec: c must be positive");
    return {MeasureKind::StdDev, c, false};
}

RiskMeasureSpec RiskMeasureSpec::value_at_risk(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("RiskMeasureSpec: alpha must lie in (0, 1)");
    return {MeasureKind::VaR, alpha, false};
}

RiskMeasureSpec RiskMeasureSpec::expected_shortfall(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("RiskMeasureSpec: alpha must lie in (0, 1)");
    return {MeasureKind::ES, alpha, false};
}

RiskMeasureSpec RiskMeasureSpec::with_unexpected_loss() const {
    if (kind_ == MeasureKind::StdDev)
        throw ValidationError(
            "RiskMeasureSpec: sigma_c is translation invariant; no UL variant");
    return {kind_, param_, true};
}

const char* RiskMeasureSpec::name() const {
    switch (kind_) {
    case MeasureKind::StdDev:
        return "sd";
    case MeasureKind::VaR:
        return unexpected_loss_ ? "ul_var" : "var";
    case MeasureKind::ES:
        return unexpected_loss_ ? "ul_es" : "es";
    }
    return "?";
}

namespace {

//! ceil(gamma*N) guarded against the one-ulp inflation of gamma*N when the
//! exact product is integral (e.g. 0.55 * 1e6).
std::size_t order_index(double gamma, std::size_t n) {
    const double t = gamma * static_cast<double>(n);
    auto k = static_cast<std::size_t>(std::ceil(t * (1.0 - 1e-14)));
    if (k < 1)
        k = 1;
    if (k > n)
        k = n;
    return k;
}

void check_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ValidationError("quantile: probability must lie in (0, 1)");
}

} // namespace

double quantile(std::span<const double> sample, double gamma) {
    check_gamma(gamma);
    if (sample.empty())
        throw ValidationError("quantile: empty sample");
    const std::size_t k = order_index(gamma, sample.size());
    std::vector<double> scratch(sample.begin(), sample.end());
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    return scratch[k - 1];
}

double quantile_sorted(std::span<const double> sorted, double gamma) {
    check_gamma(gamma);
    if (sorted.empty())
        throw ValidationError("quantile: empty sample");
    return sorted[order_index(gamma, sorted.size()) - 1];
}

double value_at_risk(std::span<const double> pl_sample, double alpha) {
    check_gamma(alpha);
    if (pl_sample.empty())
        throw ValidationError("value_at_risk: empty sample");
    std::vector<double> neg(pl_sample.size());
    for (std::size_t i = 0; i < neg.size(); ++i)
        neg[i] = -pl_sample[i];
    const std::size_t k = order_index(alpha, neg.size());
    std::nth_element(neg.begin(), neg.begin() + (k - 1), neg.end());
    return neg[k - 1];
}

double expected_shortfall(std::span<const double> pl_sample, double alpha) {
    const double var = value_at_risk(pl_sample, alpha);
    const auto [tail_sum, tail_count] = vecops::sum_count_le(pl_sample, -var);
    // Nonempty by the quantile definition: -var is a realized sample value.
    return -(tail_sum / static_cast<double>(tail_count));
}

double std_dev_measure(std::span<const double> pl_sample, double c) {
    if (!(c > 0.0))
        throw ValidationError("std_dev_measure: c must be positive");
    if (pl_sample.empty())
        throw ValidationError("std_dev_measure: empty sample");
    return c * std::sqrt(vecops::variance(pl_sample));
}

double chebychev_c(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("chebychev_c: alpha must lie in (0, 1)");
    return std::sqrt(alpha / (1.0 - alpha));
}

double unexpected_loss(std::span<const double> pl_sample, const RiskMeasureSpec& spec) {
    if (spec.kind() == MeasureKind::StdDev)
        throw ValidationError("unexpected_loss: not defined for sigma_c");
    const double base = spec.kind() == MeasureKind::VaR
                            ? value_at_risk(pl_sample, spec.alpha())
                            : expected_shortfall(pl_sample, spec.alpha());
    return base + vecops::mean(pl_sample);
}

double evaluate(const RiskMeasureSpec& spec, std::span<const double> pl_sample) {
    switch (spec.kind()) {
    case MeasureKind::StdDev:
        return std_dev_measure(pl_sample, spec.c());
    case MeasureKind::VaR: {
        const double v = value_at_risk(pl_sample, spec.alpha());
        return spec.unexpected_loss() ? v + vecops::mean(pl_sample) : v;
    }
    case MeasureKind::ES: {
        const double v = expected_shortfall(pl_sample, spec.alpha());
        return spec.unexpected_loss() ? v + vecops::mean(pl_sample) : v;
    }
    }
    throw ValidationError("evaluate: unknown measure kind");
}

double homogeneity_check(const RiskMeasureSpec& spec, std::span<const double> pl_sample,
                         double h) {
    if (!(h > 0.0))
        throw ValidationError("homogeneity_check: h must be positive");
    std::vector<double> scaled(pl_sample.size());
    for (std::size_t i = 0; i < scaled.size(); ++i)
        scaled[i] = h * pl_sample[i];
    const double base = evaluate(spec, pl_sample);
    const double at_h = evaluate(spec, scaled);
    return std::fabs(at_h - h * base) / std::max(std::fabs(base), 1e-12);
}

double ul_var_loss(std::span<const double> losses, double alpha) {
    return quantile(losses, alpha) - vecops::mean(losses);
}

double ul_es_loss(std::span<const double> losses, double alpha) {
    const double q = quantile(losses, alpha);
    const auto [tail_sum, tail_count] = vecops::sum_count_ge(losses, q);
    return tail_sum / static_cast<double>(tail_count) - vecops::mean(losses);
}

} // namespace capalloc
