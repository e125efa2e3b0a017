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

/*! \file capalloc/scenario.hpp
    \brief Scenario samples, portfolio weights and profit/loss conventions.

    A ScenarioMatrix holds N joint scenarios for n assets; every scenario
    carries probability 1/N.  Matrices are immutable after construction and
    safe to share across threads.
*/

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace capalloc {

//! Sign convention of the stored outcomes.
enum class Convention {
    ProfitLoss, //!< positive = gain, negative = loss
    LossOnly,   //!< nonnegative loss fractions/amounts
};

class ScenarioMatrix {
public:
    //! values is column-major: asset i occupies [i*N, (i+1)*N).
    ScenarioMatrix(std::size_t n_scenarios, std::vector<std::string> asset_names,
                   std::vector<double> values, Convention convention);

    std::size_t scenarios() const { return n_scenarios_; }
    std::size_t assets() const { return names_.size(); }
    Convention convention() const { return convention_; }
    const std::vector<std::string>& asset_names() const { return names_; }

    std::span<const double> column(std::size_t asset) const {
        return {values_.data() + asset * n_scenarios_, n_scenarios_};
    }

    double operator()(std::size_t scenario, std::size_t asset) const {
        return values_[asset * n_scenarios_ + scenario];
    }

private:
    std::size_t n_scenarios_;
    std::vector<std::string> names_;
    std::vector<double> values_;
    Convention convention_;
};

//! Dimensionless exposure multipliers, one per asset; nonnegative.
struct PortfolioWeights {
    std::vector<double> u;

    static PortfolioWeights ones(std::size_t n) {
        return PortfolioWeights{std::vector<double>(n, 1.0)};
    }
    //! Validates length/finiteness/sign against a matrix.
    void check_against(const ScenarioMatrix& m) const;
};

//! Stipulated gains g_i, the earnings if no loss materializes.
struct GainVector {
    std::vector<double> g;
};

//! Portfolio outcome per scenario: out[k] = sum_i u[i] * values[k, i].
std::vector<double> aggregate(const ScenarioMatrix& matrix, const PortfolioWeights& weights);

//! Converts a loss sample to profit/loss outcomes via x = g - loss.
ScenarioMatrix losses_to_profit_loss(const ScenarioMatrix& losses, const GainVector& gains);

//! Parses CSV scenario data: header row of asset names, one scenario per row.
//! An optional leading column named "scenario" is ignored.
ScenarioMatrix load_scenarios(std::istream& in, Convention convention = Convention::ProfitLoss);

} // namespace capalloc
