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

#include "capalloc/scenario.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "capalloc/errors.hpp"
#include "capalloc/vecops.hpp"

namespace capalloc {

ScenarioMatrix::ScenarioMatrix(std::size_t n_scenarios, std::vector<std::string> asset_names,
                               std::vector<double> values, Convention convention)
    : n_scenarios_(n_scenarios),
      names_(std::move(asset_names)),
      values_(std::move(values)),
      convention_(convention) {
    if (n_scenarios_ < 1 || names_.empty())
        throw ValidationError("ScenarioMatrix: need at least one scenario and one asset");
    if (values_.size() != n_scenarios_ * names_.size())
        throw ValidationError("ScenarioMatrix: value buffer does not match dimensions");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw ValidationError("ScenarioMatrix: non-finite value at scenario " +
                                  std::to_string(i % n_scenarios_ + 1) + ", asset " +
                                  std::to_string(i / n_scenarios_ + 1));
        if (convention_ == Convention::LossOnly && values_[i] < 0.0)
            throw ValidationError("ScenarioMatrix: negative loss at scenario " +
                                  std::to_string(i % n_scenarios_ + 1) + ", asset " +
                                  std::to_string(i / n_scenarios_ + 1));
    }
}

void PortfolioWeights::check_against(const ScenarioMatrix& m) const {
    if (u.size() != m.assets())
        throw ValidationError("PortfolioWeights: got " + std::to_string(u.size()) +
                              " weights for " + std::to_string(m.assets()) + " assets");
    for (double w : u) {
        if (!std::isfinite(w))
            throw ValidationError("PortfolioWeights: non-finite weight");
        if (w < 0.0)
            throw ValidationError("PortfolioWeights: negative weights are not supported");
    }
}

std::vector<double> aggregate(const ScenarioMatrix& matrix, const PortfolioWeights& weights) {
    weights.check_against(matrix);
    std::vector<double> out(matrix.scenarios(), 0.0);
    // Fixed per-asset accumulation order keeps results identical no matter
    // which weights are zero and how many workers run.
    for (std::size_t i = 0; i < matrix.assets(); ++i)
        vecops::add_scaled(weights.u[i], matrix.column(i), out);
    return out;
}

ScenarioMatrix losses_to_profit_loss(const ScenarioMatrix& losses, const GainVector& gains) {
    if (losses.convention() != Convention::LossOnly)
        throw ValidationError("losses_to_profit_loss: input must use the LossOnly convention");
    if (gains.g.size() != losses.assets())
        throw ValidationError("losses_to_profit_loss: gain vector length mismatch");
    for (double g : gains.g)
        if (!std::isfinite(g))
            throw ValidationError("losses_to_profit_loss: non-finite gain");

    const std::size_t n = losses.scenarios();
    std::vector<double> values(n * losses.assets());
    for (std::size_t i = 0; i < losses.assets(); ++i) {
        const auto col = losses.column(i);
        const double g = gains.g[i];
        for (std::size_t k = 0; k < n; ++k)
            values[i * n + k] = g - col[k];
    }
    return ScenarioMatrix(n, losses.asset_names(), std::move(values),
                          Convention::ProfitLoss);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

} // namespace

ScenarioMatrix load_scenarios(std::istream& in, Convention convention) {
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("load_scenarios: empty input");
    auto header = split_csv(line);
    std::size_t skip = 0;
    if (!header.empty() && header.front() == "scenario")
        skip = 1;
    if (header.size() <= skip)
        throw ValidationError("load_scenarios: header row has no asset names");
    std::vector<std::string> names(header.begin() + skip, header.end());
    const std::size_t n_assets = names.size();

    std::vector<std::vector<double>> columns(n_assets);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty())
            continue;
        const auto cells = split_csv(line);
        if (cells.size() != n_assets + skip)
            throw ValidationError("load_scenarios: row " + std::to_string(row) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(n_assets + skip));
        for (std::size_t i = 0; i < n_assets; ++i) {
            const auto cell = cells[i + skip];
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v))
                throw ValidationError("load_scenarios: row " + std::to_string(row) +
                                      ", column '" + names[i] + "': cannot parse '" +
                                      std::string(cell) + "' as a finite number");
            columns[i].push_back(v);
        }
    }
    if (columns[0].empty())
        throw ValidationError("load_scenarios: empty body");

    const std::size_t n = columns[0].size();
    std::vector<double> values;
    values.reserve(n * n_assets);
    for (auto& c : columns)
        values.insert(values.end(), c.begin(), c.end());
    return ScenarioMatrix(n, std::move(names), std::move(values), convention);
}

} // namespace capalloc
