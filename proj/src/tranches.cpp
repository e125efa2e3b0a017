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

#include "capalloc/tranches.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "capalloc/errors.hpp"
#include "capalloc/risk_measures.hpp"
#include "capalloc/vecops.hpp"

namespace capalloc {

void TrancheLevelSpec::validate() const {
    if (type == Type::Quantile) {
        if (!(value > 0.0 && value < 1.0))
            throw ValidationError("TrancheLevelSpec: quantile level must lie in (0, 1)");
    } else {
        if (!(value > 0.0))
            throw ValidationError("TrancheLevelSpec: EL multiple must be positive");
    }
}

void TrancheSpec::validate() const {
    if (levels.empty())
        throw ValidationError("TrancheSpec: need at least one interior level (two tranches)");
    for (const auto& l : levels)
        l.validate();
}

namespace {

void check_loss_matrix(const ScenarioMatrix& losses) {
    if (losses.convention() != Convention::LossOnly)
        throw ValidationError("tranches: expected a LossOnly scenario matrix");
}

std::vector<double> weighted_asset_el(const ScenarioMatrix& losses,
                                      const PortfolioWeights& weights) {
    std::vector<double> el(losses.assets());
    for (std::size_t i = 0; i < losses.assets(); ++i)
        el[i] = weights.u[i] * vecops::mean(losses.column(i));
    return el;
}

double realize_one(const TrancheLevelSpec& level, std::span<const double> loss_sample,
                   std::span<const double> asset_el) {
    if (level.type == TrancheLevelSpec::Type::Quantile)
        return quantile(loss_sample, level.value);
    double total_el = 0.0;
    for (double e : asset_el)
        total_el += e;
    return level.value * total_el;
}

void check_levels_ascending(std::span<const double> c) {
    for (std::size_t j = 1; j < c.size(); ++j) {
        if (!(c[j] > c[j - 1]))
            throw ValidationError("realize_levels: levels not strictly increasing (c_" +
                                  std::to_string(j - 1) + " = " + std::to_string(c[j - 1]) +
                                  ", c_" + std::to_string(j) + " = " + std::to_string(c[j]) +
                                  ")");
    }
}

} // namespace

std::vector<double> realize_levels(const TrancheSpec& spec, const ScenarioMatrix& losses,
                                   const PortfolioWeights& weights) {
    spec.validate();
    check_loss_matrix(losses);
    weights.check_against(losses);

    const auto loss = aggregate(losses, weights);
    const auto asset_el = weighted_asset_el(losses, weights);

    std::vector<double> c;
    c.reserve(spec.levels.size() + 2);
    c.push_back(0.0);
    for (const auto& level : spec.levels) {
        const double value = realize_one(level, loss, asset_el);
        if (!(value > 0.0 && value < 1.0))
            throw ValidationError("realize_levels: realized level " +
                                  std::to_string(c.size()) + " = " + std::to_string(value) +
                                  " lies outside (0, 1)");
        c.push_back(value);
    }
    c.push_back(1.0);
    check_levels_ascending(c);
    return c;
}

TrancheLossMatrix tranche_losses(std::span<const double> loss_sample,
                                 std::span<const double> levels) {
    if (levels.size() < 3)
        throw ValidationError("tranche_losses: need at least two tranches");
    if (levels.front() != 0.0 || levels.back() != 1.0)
        throw ValidationError("tranche_losses: boundaries must be c_0 = 0 and c_m = 1");
    check_levels_ascending(levels);

    TrancheLossMatrix out;
    out.scenarios = loss_sample.size();
    out.count = levels.size() - 1;
    out.values.resize(out.scenarios * out.count);
    // Running-remainder layering: each tranche takes what the lower layers
    // have not consumed yet, so the per-scenario sum telescopes back to the
    // loss exactly, in floating point too.  The top layer may need a one-ulp
    // nudge when the remainder subtraction rounds onto a tie.
    for (std::size_t k = 0; k < out.scenarios; ++k) {
        const double loss = loss_sample[k];
        double consumed = 0.0;
        for (std::size_t j = 0; j + 1 < out.count; ++j) {
            const double capped = loss < levels[j + 1] ? loss : levels[j + 1];
            const double y = capped - consumed;
            out.values[j * out.scenarios + k] = y;
            consumed += y;
        }
        double top = loss - consumed;
        if (consumed + top != loss) {
            const double inf = std::numeric_limits<double>::infinity();
            const double up = std::nextafter(top, inf);
            const double dn = std::nextafter(top, -inf);
            if (consumed + up == loss)
                top = up;
            else if (consumed + dn == loss)
                top = dn;
            // else: rounding parity admits no exact landing; the sum stays
            // within one ulp of the loss.
        }
        out.values[(out.count - 1) * out.scenarios + k] = top;
    }
    return out;
}

std::vector<double> tranche_expected_losses(std::span<const double> loss_sample,
                                            std::span<const double> levels) {
    if (loss_sample.empty())
        throw ValidationError("tranche_expected_losses: empty sample");
    check_levels_ascending(levels);
    const double n = static_cast<double>(loss_sample.size());
    std::vector<double> el(levels.size() - 1);
    double prev = 0.0; // sum of min(L, c_0) with c_0 = 0 on nonnegative losses
    for (std::size_t j = 1; j < levels.size(); ++j) {
        const double cur = vecops::sum_min(loss_sample, levels[j]);
        el[j - 1] = (cur - prev) / n;
        prev = cur;
    }
    return el;
}

namespace {

//! Shared machinery for quantile-level derivatives on one portfolio.
struct QuantileDerivContext {
    const ScenarioMatrix& losses;
    const PortfolioWeights& weights;
    std::vector<double> loss;   // L(u)
    double bandwidth;
    SmoothedSample smooth;
    NwWeights nw;

    QuantileDerivContext(const ScenarioMatrix& l, const PortfolioWeights& w,
                         const KernelConfig& cfg)
        : losses(l),
          weights(w),
          loss(aggregate(l, w)),
          bandwidth(cfg.resolve_bandwidth(loss)),
          smooth(loss, KernelConfig::fixed(bandwidth)) {}

    //! Number of sample points exactly at the realized quantile.
    std::size_t mass_at_quantile(double alpha) const {
        const double q = quantile_sorted(smooth.sorted(), alpha);
        const auto lo = std::lower_bound(smooth.sorted().begin(), smooth.sorted().end(), q);
        const auto hi = std::upper_bound(lo, smooth.sorted().end(), q);
        return static_cast<std::size_t>(hi - lo);
    }

    std::vector<double> derive(double alpha) {
        const double q_smooth = smooth.quantile(alpha);
        const double q_emp = quantile_sorted(smooth.sorted(), alpha);
        nw.compute(loss, bandwidth, q_smooth);
        const auto below_count = vecops::sum_count_le(loss, q_emp).second;

        std::vector<double> d(losses.assets());
        for (std::size_t k = 0; k < losses.assets(); ++k) {
            const auto col = losses.column(k);
            const double at_quantile = nw.apply(col);
            const double below_mean =
                vecops::sum_where_le(loss, q_emp, col) / static_cast<double>(below_count);
            d[k] = (1.0 - alpha) * at_quantile + alpha * below_mean;
        }
        return d;
    }
};

double f_value(const ScenarioMatrix& losses, const PortfolioWeights& weights,
               const TrancheLevelSpec& level) {
    const auto loss = aggregate(losses, weights);
    const auto asset_el = weighted_asset_el(losses, weights);
    const double c = realize_one(level, loss, asset_el);
    if (!(c > 0.0 && c < 1.0))
        throw ValidationError("f_derivative_general: realized level " + std::to_string(c) +
                              " lies outside (0, 1)");
    return vecops::sum_min(loss, c) / static_cast<double>(loss.size());
}

// Finite differences for the component matrix: central with a relative step,
// falling back to a one-sided absolute step at zero weights (where only the
// unit component is wanted; the component itself vanishes there anyway).
std::vector<double> fd_derivative_for_components(const ScenarioMatrix& losses,
                                                 const PortfolioWeights& weights,
                                                 const TrancheLevelSpec& level,
                                                 double eps) {
    double weight_scale = 0.0;
    for (const double u : weights.u)
        weight_scale += u;
    weight_scale /= static_cast<double>(weights.u.size());

    std::vector<double> d(losses.assets(), 0.0);
    PortfolioWeights bumped = weights;
    for (std::size_t k = 0; k < losses.assets(); ++k) {
        const double u_k = weights.u[k];
        double step = eps * (u_k > 0.0 ? u_k : weight_scale);
        for (int attempt = 0;; ++attempt) {
            try {
                if (u_k > 0.0) {
                    bumped.u[k] = u_k + step;
                    const double up = f_value(losses, bumped, level);
                    bumped.u[k] = u_k - step;
                    const double dn = f_value(losses, bumped, level);
                    d[k] = (up - dn) / (2.0 * step);
                } else {
                    bumped.u[k] = step;
                    const double up = f_value(losses, bumped, level);
                    bumped.u[k] = 0.0;
                    const double at = f_value(losses, bumped, level);
                    d[k] = (up - at) / step;
                }
                break;
            } catch (const ValidationError&) {
                if (attempt >= 1)
                    throw DegeneracyError(
                        "tranche_loss_components: perturbed level inadmissible even "
                        "after shrinking the step");
                step *= 0.5;
            }
        }
        bumped.u[k] = u_k;
    }
    return d;
}

} // namespace

std::vector<double> f_derivative_quantile(const ScenarioMatrix& losses,
                                          const PortfolioWeights& weights, double alpha,
                                          const KernelConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("f_derivative_quantile: alpha must lie in (0, 1)");
    check_loss_matrix(losses);
    weights.check_against(losses);
    QuantileDerivContext ctx(losses, weights, cfg);
    return ctx.derive(alpha);
}

std::vector<double> f_derivative_general(const ScenarioMatrix& losses,
                                         const PortfolioWeights& weights,
                                         const TrancheLevelSpec& level, double eps) {
    if (!(eps > 0.0 && eps <= 0.1))
        throw ValidationError("f_derivative_general: eps must lie in (0, 0.1]");
    check_loss_matrix(losses);
    weights.check_against(losses);
    level.validate();

    std::vector<double> d(losses.assets(), 0.0);
    PortfolioWeights bumped = weights;
    for (std::size_t k = 0; k < losses.assets(); ++k) {
        const double u_k = weights.u[k];
        if (u_k == 0.0)
            throw ValidationError(
                "f_derivative_general: relative step undefined for zero weight");
        double step = eps * u_k;
        for (int attempt = 0;; ++attempt) {
            try {
                bumped.u[k] = u_k + step;
                const double up = f_value(losses, bumped, level);
                bumped.u[k] = u_k - step;
                const double dn = f_value(losses, bumped, level);
                d[k] = (up - dn) / (2.0 * step);
                break;
            } catch (const ValidationError&) {
                if (attempt >= 1)
                    throw DegeneracyError(
                        "f_derivative_general: perturbed level inadmissible even after "
                        "shrinking the step");
                step *= 0.5;
            }
        }
        bumped.u[k] = u_k;
    }
    return d;
}

std::vector<double> TrancheComponentMatrix::row_sums() const {
    std::vector<double> sums(assets, 0.0);
    for (std::size_t j = 0; j < tranches; ++j)
        for (std::size_t k = 0; k < assets; ++k)
            sums[k] += component(k, j);
    return sums;
}

std::vector<double> TrancheComponentMatrix::column_sums() const {
    std::vector<double> sums(tranches, 0.0);
    for (std::size_t j = 0; j < tranches; ++j)
        for (std::size_t k = 0; k < assets; ++k)
            sums[j] += component(k, j);
    return sums;
}

TrancheComponentMatrix tranche_loss_components(const ScenarioMatrix& losses,
                                               const PortfolioWeights& weights,
                                               const TrancheSpec& spec,
                                               const KernelConfig& cfg, double fd_eps) {
    spec.validate();
    check_loss_matrix(losses);
    weights.check_against(losses);

    const std::size_t n = losses.assets();
    const std::size_t m = spec.tranches();

    TrancheComponentMatrix out;
    out.assets = n;
    out.tranches = m;
    out.levels = realize_levels(spec, losses, weights);
    out.routes.assign(m - 1, DerivRoute::QuantileKernel);

    QuantileDerivContext ctx(losses, weights, cfg);
    out.tranche_el = tranche_expected_losses(ctx.loss, out.levels);
    out.asset_el = weighted_asset_el(losses, weights);

    // dF_j/du_k per interior level.  Quantile levels keep the kernel route
    // unless atoms sit on the realized quantile: finite differences would
    // re-realize the empirical quantile, whose motion in u rides on single
    // order-statistic scenarios and is far noisier in thin tails.
    std::vector<std::vector<double>> deriv(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const auto& level = spec.levels[j];
        const bool kernel_route = level.type == TrancheLevelSpec::Type::Quantile &&
                                  ctx.mass_at_quantile(level.value) < 2;
        if (kernel_route) {
            deriv[j] = ctx.derive(level.value);
        } else {
            out.routes[j] = DerivRoute::FiniteDifference;
            deriv[j] = fd_derivative_for_components(losses, weights, level, fd_eps);
        }
    }

    out.components.assign(n * m, 0.0);
    out.unit_components.assign(n * m, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double u_k = weights.u[k];
        const double el_k = vecops::mean(losses.column(k));
        for (std::size_t j = 0; j < m; ++j) {
            double diff;
            if (j == 0)
                diff = deriv[0][k];
            else if (j + 1 < m)
                diff = deriv[j][k] - deriv[j - 1][k];
            else
                diff = el_k - deriv[m - 2][k];
            out.unit_components[j * n + k] = diff;
            out.components[j * n + k] = u_k == 0.0 ? 0.0 : u_k * diff;
        }
    }
    return out;
}

std::vector<RatioExtreme> extreme_check(
    std::span<const double> u_grid, const std::vector<std::vector<double>>& tranche_ratio,
    const std::vector<std::vector<std::vector<double>>>& component_ratio,
    std::size_t window, double prominence_frac) {
    if (window < 1)
        throw ValidationError("extreme_check: window must be at least 1");
    const std::size_t ng = u_grid.size();
    std::vector<RatioExtreme> found;
    for (std::size_t j = 0; j < tranche_ratio.size(); ++j) {
        const auto& r = tranche_ratio[j];
        if (r.size() != ng)
            throw ValidationError("extreme_check: ratio curve does not match the grid");
        double r_min = r[0], r_max = r[0];
        for (double v : r) {
            r_min = std::min(r_min, v);
            r_max = std::max(r_max, v);
        }
        const double prominence = prominence_frac * (r_max - r_min);
        for (std::size_t i = window; i + window < ng; ++i) {
            bool is_max = true, is_min = true;
            for (std::size_t w = 1; w <= window; ++w) {
                is_max = is_max && r[i] > r[i - w] && r[i] > r[i + w];
                is_min = is_min && r[i] < r[i - w] && r[i] < r[i + w];
            }
            // Prominence against the window edges filters sampling wiggle.
            if (is_max)
                is_max = r[i] - std::max(r[i - window], r[i + window]) >= prominence;
            if (is_min)
                is_min = std::min(r[i - window], r[i + window]) - r[i] >= prominence;
            if (!is_max && !is_min)
                continue;
            RatioExtreme e;
            e.tranche = j;
            e.grid_index = i;
            e.u = u_grid[i];
            e.is_maximum = is_max;
            e.tranche_ratio = r[i];
            double spread = 0.0;
            for (const auto& asset_curve : component_ratio[j])
                spread = std::max(spread, std::fabs(asset_curve[i] - r[i]));
            e.max_spread = spread;
            found.push_back(e);
        }
    }
    return found;
}

} // namespace capalloc
