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

#include "capalloc/allocation.hpp"

#include <cmath>
#include <limits>

#include "capalloc/errors.hpp"
#include "capalloc/vecops.hpp"

namespace capalloc {

namespace {

double sum_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

const char* contrib_method_name(ContribMethod m) {
    switch (m) {
    case ContribMethod::StdDevClosedForm:
        return "sd_closed_form";
    case ContribMethod::ESDirect:
        return "es_direct";
    case ContribMethod::VaRKernel:
        return "var_kernel";
    case ContribMethod::VaRLinearApprox:
        return "var_linear";
    case ContribMethod::Marginal:
        return "marginal";
    case ContribMethod::MarginalNormalized:
        return "marginal_normalized";
    }
    return "?";
}

ContributionReport euler_stddev_contrib(const ScenarioMatrix& matrix,
                                        const PortfolioWeights& weights, double c) {
    if (!(c > 0.0))
        throw ValidationError("euler_stddev_contrib: c must be positive");
    const auto x = aggregate(matrix, weights);
    const double var = vecops::variance(x);

    ContributionReport report;
    report.method = ContribMethod::StdDevClosedForm;
    report.per_asset.assign(matrix.assets(), 0.0);
    if (var == 0.0) {
        report.degenerate = true;
        return report;
    }
    const double sd = std::sqrt(var);
    report.total = c * sd;
    for (std::size_t i = 0; i < matrix.assets(); ++i)
        report.per_asset[i] =
            c * weights.u[i] * vecops::covariance(matrix.column(i), x) / sd;
    report.residual = report.total - sum_of(report.per_asset);
    return report;
}

ContributionReport euler_es_contrib(const ScenarioMatrix& matrix,
                                    const PortfolioWeights& weights, double alpha) {
    const auto x = aggregate(matrix, weights);
    const double var = value_at_risk(x, alpha);
    const double threshold = -var;

    std::vector<std::uint32_t> tail;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] <= threshold)
            tail.push_back(static_cast<std::uint32_t>(k));
    const auto m = static_cast<double>(tail.size());

    ContributionReport report;
    report.method = ContribMethod::ESDirect;
    report.total = expected_shortfall(x, alpha);
    report.per_asset.assign(matrix.assets(), 0.0);
    for (std::size_t i = 0; i < matrix.assets(); ++i) {
        const auto col = matrix.column(i);
        double s = 0.0;
        for (const std::uint32_t k : tail)
            s += col[k];
        report.per_asset[i] = -weights.u[i] * (s / m);
    }
    report.residual = report.total - sum_of(report.per_asset);
    return report;
}

ContributionReport euler_var_contrib_kernel(const ScenarioMatrix& matrix,
                                            const PortfolioWeights& weights, double alpha,
                                            const KernelConfig& cfg, bool rescale,
                                            VarKernelInfo* info) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("euler_var_contrib_kernel: alpha must lie in (0, 1)");
    const auto x = aggregate(matrix, weights);
    const double bw = cfg.resolve_bandwidth(x);
    const SmoothedSample smooth(x, KernelConfig::fixed(bw));
    // -VaR of the smoothed outcome is its (1-alpha) smoothed quantile.
    const double query = smooth.quantile(1.0 - alpha);
    if (info != nullptr) {
        info->bandwidth = bw;
        info->query_point = query;
    }

    NwWeights w;
    w.compute(x, bw, query);

    ContributionReport report;
    report.method = ContribMethod::VaRKernel;
    report.total = -query;
    report.per_asset.assign(matrix.assets(), 0.0);
    for (std::size_t i = 0; i < matrix.assets(); ++i)
        report.per_asset[i] = -weights.u[i] * w.apply(matrix.column(i));
    report.residual = report.total - sum_of(report.per_asset);
    if (rescale) {
        const double s = sum_of(report.per_asset);
        if (s == 0.0)
            throw DegeneracyError("euler_var_contrib_kernel: cannot rescale zero sum");
        const double factor = report.total / s;
        for (double& v : report.per_asset)
            v *= factor;
        report.residual = report.total - sum_of(report.per_asset);
    }
    return report;
}

ContributionReport euler_var_contrib_linear(const ScenarioMatrix& matrix,
                                            const PortfolioWeights& weights, double alpha) {
    const auto x = aggregate(matrix, weights);
    const double var_x = vecops::variance(x);
    if (var_x == 0.0)
        throw DegeneracyError("euler_var_contrib_linear: zero portfolio variance");
    const double ul = value_at_risk(x, alpha) + vecops::mean(x);

    ContributionReport report;
    report.method = ContribMethod::VaRLinearApprox;
    report.total = value_at_risk(x, alpha);
    report.per_asset.assign(matrix.assets(), 0.0);
    for (std::size_t i = 0; i < matrix.assets(); ++i) {
        const auto col = matrix.column(i);
        const double beta = vecops::covariance(col, x) / var_x;
        report.per_asset[i] = weights.u[i] * (beta * ul - vecops::mean(col));
    }
    report.residual = report.total - sum_of(report.per_asset);
    return report;
}

ContributionReport marginal_contrib(const RiskMeasureSpec& spec, const ScenarioMatrix& matrix,
                                    const PortfolioWeights& weights) {
    const auto x = aggregate(matrix, weights);
    const double total = evaluate(spec, x);

    ContributionReport report;
    report.method = ContribMethod::Marginal;
    report.total = total;
    report.per_asset.assign(matrix.assets(), 0.0);
    std::vector<double> without(x.size());
    for (std::size_t i = 0; i < matrix.assets(); ++i) {
        // X - u_i X_i, scenario aligned.
        vecops::axpby(1.0, x, -weights.u[i], matrix.column(i), without);
        report.per_asset[i] = total - evaluate(spec, without);
    }
    report.residual = report.total - sum_of(report.per_asset);
    return report;
}

ContributionReport normalized_marginal_contrib(const RiskMeasureSpec& spec,
                                               const ScenarioMatrix& matrix,
                                               const PortfolioWeights& weights) {
    ContributionReport report = marginal_contrib(spec, matrix, weights);
    const double s = sum_of(report.per_asset);
    if (s == 0.0 || !std::isfinite(1.0 / s))
        throw DegeneracyError("normalized_marginal_contrib: marginal contributions sum to zero");
    const double factor = report.total / s;
    for (double& v : report.per_asset)
        v *= factor;
    report.method = ContribMethod::MarginalNormalized;
    report.residual = report.total - sum_of(report.per_asset);
    return report;
}

ContributionReport apply_unexpected_loss(ContributionReport report,
                                         const ScenarioMatrix& matrix,
                                         const PortfolioWeights& weights) {
    const auto x = aggregate(matrix, weights);
    for (std::size_t i = 0; i < matrix.assets(); ++i)
        report.per_asset[i] += weights.u[i] * vecops::mean(matrix.column(i));
    report.total += vecops::mean(x);
    report.residual = report.total - sum_of(report.per_asset);
    return report;
}

RoracReport rorac(const ScenarioMatrix& matrix, const PortfolioWeights& weights,
                  const ContributionReport& contributions) {
    weights.check_against(matrix);
    if (contributions.per_asset.size() != matrix.assets())
        throw ValidationError("rorac: contribution report does not match the matrix");

    RoracReport r;
    const auto x = aggregate(matrix, weights);
    const double profit = vecops::mean(x);
    r.portfolio_defined = contributions.total > 0.0;
    r.portfolio = r.portfolio_defined ? profit / contributions.total : kNaN;
    r.per_asset.assign(matrix.assets(), kNaN);
    r.defined.assign(matrix.assets(), 0);
    for (std::size_t i = 0; i < matrix.assets(); ++i) {
        const double capital = contributions.per_asset[i];
        if (capital > 0.0) {
            r.per_asset[i] = weights.u[i] * vecops::mean(matrix.column(i)) / capital;
            r.defined[i] = 1;
        }
    }
    return r;
}

std::vector<ProbePoint> rorac_compatibility_probe(const RiskMeasureSpec& spec,
                                                  const ScenarioMatrix& matrix,
                                                  const PortfolioWeights& weights,
                                                  std::size_t asset,
                                                  std::span<const double> h_grid,
                                                  const ContributionReport& contributions) {
    if (asset >= matrix.assets())
        throw ValidationError("rorac_compatibility_probe: asset index out of range");
    const auto x = aggregate(matrix, weights);
    const double r0 = vecops::mean(x) / evaluate(spec, x);
    const double capital = contributions.per_asset[asset];
    const double ri = weights.u[asset] * vecops::mean(matrix.column(asset)) / capital;

    std::vector<ProbePoint> points;
    points.reserve(h_grid.size());
    const double tol = 1e-9 * std::max(std::fabs(r0), std::fabs(ri));
    const bool hypothesis = capital > 0.0 && (ri - r0) > tol;
    std::vector<double> bumped(x.size());
    for (const double h : h_grid) {
        if (!(h > 0.0))
            throw ValidationError("rorac_compatibility_probe: h must be positive");
        if (!hypothesis) {
            points.push_back({h, ProbeVerdict::Indeterminate});
            continue;
        }
        // X + h * u_i X_i
        vecops::axpby(1.0, x, h * weights.u[asset], matrix.column(asset), bumped);
        const double rh = vecops::mean(bumped) / evaluate(spec, bumped);
        points.push_back({h, rh > r0 ? ProbeVerdict::Holds : ProbeVerdict::Fails});
    }
    return points;
}

namespace {

double stand_alone_risk(const RiskMeasureSpec& spec, std::span<const double> column,
                        double weight, std::vector<double>& scratch) {
    scratch.resize(column.size());
    for (std::size_t k = 0; k < column.size(); ++k)
        scratch[k] = weight * column[k];
    return evaluate(spec, scratch);
}

} // namespace

double diversification_index(const RiskMeasureSpec& spec, const ScenarioMatrix& matrix,
                             const PortfolioWeights& weights) {
    const auto x = aggregate(matrix, weights);
    std::vector<double> scratch;
    double denom = 0.0;
    for (std::size_t i = 0; i < matrix.assets(); ++i)
        denom += stand_alone_risk(spec, matrix.column(i), weights.u[i], scratch);
    if (!(denom > 0.0))
        throw DegeneracyError("diversification_index: stand-alone risks sum to zero");
    return evaluate(spec, x) / denom;
}

MarginalDiversification marginal_diversification_index(
    const RiskMeasureSpec& spec, const ScenarioMatrix& matrix,
    const PortfolioWeights& weights, const ContributionReport& contributions) {
    MarginalDiversification out;
    out.index.assign(matrix.assets(), kNaN);
    out.defined.assign(matrix.assets(), 0);
    std::vector<double> scratch;
    for (std::size_t i = 0; i < matrix.assets(); ++i) {
        const double alone = stand_alone_risk(spec, matrix.column(i), weights.u[i], scratch);
        if (alone > 0.0) {
            out.index[i] = contributions.per_asset[i] / alone;
            out.defined[i] = 1;
        }
    }
    return out;
}

std::vector<double> gradient_check(const RiskMeasureSpec& spec, const ScenarioMatrix& matrix,
                                   const PortfolioWeights& weights, double eps) {
    if (spec.kind() == MeasureKind::VaR)
        throw ValidationError("gradient_check: supported for sigma_c and ES only");
    if (!(eps > 0.0 && eps <= 0.1))
        throw ValidationError("gradient_check: eps must lie in (0, 0.1]");

    const ContributionReport closed =
        spec.kind() == MeasureKind::StdDev
            ? euler_stddev_contrib(matrix, weights, spec.c())
            : euler_es_contrib(matrix, weights, spec.alpha());

    std::vector<double> gaps(matrix.assets(), 0.0);
    PortfolioWeights bumped = weights;
    for (std::size_t i = 0; i < matrix.assets(); ++i) {
        const double u_i = weights.u[i];
        if (u_i == 0.0)
            continue; // both the contribution and u_i * df/du_i vanish
        const double step = eps * u_i;
        bumped.u[i] = u_i + step;
        const double f_up = evaluate(spec, aggregate(matrix, bumped));
        bumped.u[i] = u_i - step;
        const double f_dn = evaluate(spec, aggregate(matrix, bumped));
        bumped.u[i] = u_i;
        const double fd = u_i * (f_up - f_dn) / (2.0 * step);
        gaps[i] = std::fabs(closed.per_asset[i] - fd) /
                  std::max(std::fabs(closed.per_asset[i]), 1e-12);
    }
    return gaps;
}

} // namespace capalloc
