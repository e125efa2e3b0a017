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

/*! \file capalloc/tranches.hpp
    \brief Tranche loss variables and the decomposition of tranche expected
           losses into single-name components.

    Credit enhancement levels are defined homogeneously in the exposures,
    either as a quantile of the portfolio loss or as a multiple of the
    portfolio expected loss.  Tranche j takes Y_j = min(L,c_j) - min(L,c_{j-1});
    differentiating F_j(u) = E[min(L(u), c_j(u))] splits every tranche's
    expected loss across the underlying names so that rows sum to name
    expected losses and columns to tranche expected losses.
*/

#pragma once

#include <span>
#include <vector>

#include "capalloc/kernel.hpp"
#include "capalloc/scenario.hpp"

namespace capalloc {

struct TrancheLevelSpec {
    enum class Type { Quantile, ElMultiple };
    Type type;
    double value; //!< quantile level in (0,1), or positive EL multiple

    void validate() const;
};

//! m-1 interior enhancement levels; the outer boundaries 0 and 1 are implicit.
struct TrancheSpec {
    std::vector<TrancheLevelSpec> levels;

    std::size_t tranches() const { return levels.size() + 1; }
    void validate() const;
};

//! Realized boundaries c_0 = 0 < c_1 < ... < c_m = 1 for the given portfolio;
//! rejects crossing or out-of-(0,1) interior levels naming the offenders.
std::vector<double> realize_levels(const TrancheSpec& spec, const ScenarioMatrix& losses,
                                   const PortfolioWeights& weights);

//! Per-scenario layered losses; column j is tranche j.  The per-scenario sum
//! telescopes to the portfolio loss exactly.
struct TrancheLossMatrix {
    std::size_t scenarios = 0;
    std::size_t count = 0;
    std::vector<double> values; //!< column-major per tranche

    std::span<const double> tranche(std::size_t j) const {
        return {values.data() + j * scenarios, scenarios};
    }
};

TrancheLossMatrix tranche_losses(std::span<const double> loss_sample,
                                 std::span<const double> levels);

//! Tranche expected losses from the layered representation, without
//! materializing the full matrix.
std::vector<double> tranche_expected_losses(std::span<const double> loss_sample,
                                            std::span<const double> levels);

//! dF/du_k for F(u) = E[min(L(u), q_alpha(L(u)))]:
//! (1-alpha) E[L_k | L = q] via Nadaraya-Watson at the smoothed quantile,
//! plus alpha E[L_k | L <= q] as a direct average.
std::vector<double> f_derivative_quantile(const ScenarioMatrix& losses,
                                          const PortfolioWeights& weights, double alpha,
                                          const KernelConfig& cfg);

//! dF/du_k by central finite differences under common random numbers, with
//! the level re-realized at every perturbed weight vector.
std::vector<double> f_derivative_general(const ScenarioMatrix& losses,
                                         const PortfolioWeights& weights,
                                         const TrancheLevelSpec& level, double eps);

enum class DerivRoute { QuantileKernel, FiniteDifference };

struct TrancheComponentMatrix {
    std::size_t assets = 0;
    std::size_t tranches = 0;
    std::vector<double> components; //!< column-major: tranche j at [j*assets, ...)
    //! components / u_k, i.e. the derivative differences themselves; stays
    //! defined when a weight hits zero (useful for ratio curves).
    std::vector<double> unit_components;
    std::vector<double> asset_el;   //!< u_k * E[L_k]
    std::vector<double> tranche_el; //!< E[Y_j]
    std::vector<double> levels;     //!< realized c_0..c_m
    std::vector<DerivRoute> routes; //!< per interior level

    double component(std::size_t asset, std::size_t tranche) const {
        return components[tranche * assets + asset];
    }
    double unit_component(std::size_t asset, std::size_t tranche) const {
        return unit_components[tranche * assets + asset];
    }
    std::vector<double> row_sums() const;
    std::vector<double> column_sums() const;
};

//! Full component matrix.  Quantile levels use the kernel derivative unless
//! the empirical mass at the realized quantile reaches 2/N (ties) or the
//! conditioning set N*(1-alpha) is thinner than 20000 scenarios, in which
//! case that level falls back to common-random-number finite differences;
//! EL-multiple levels always use finite differences.
TrancheComponentMatrix tranche_loss_components(const ScenarioMatrix& losses,
                                               const PortfolioWeights& weights,
                                               const TrancheSpec& spec,
                                               const KernelConfig& cfg,
                                               double fd_eps = 0.01);

struct RatioExtreme {
    std::size_t tranche = 0;
    std::size_t grid_index = 0;
    double u = 0.0;
    bool is_maximum = false;
    double tranche_ratio = 0.0;
    double max_spread = 0.0; //!< max_k |component ratio_k - tranche ratio|
};

//! Locates interior extremes of the tranche-EL ratio curves on a weight grid
//! and reports the component-ratio spread at each.  An extreme must strictly
//! dominate a +-window neighborhood; a nonzero prominence (fraction of the
//! curve's range, measured against the window edges) additionally filters
//! Monte Carlo wiggle.
std::vector<RatioExtreme> extreme_check(
    std::span<const double> u_grid, const std::vector<std::vector<double>>& tranche_ratio,
    const std::vector<std::vector<std::vector<double>>>& component_ratio,
    std::size_t window = 3, double prominence_frac = 0.0);

} // namespace capalloc
