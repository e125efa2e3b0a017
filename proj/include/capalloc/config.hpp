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

/*! \file capalloc/config.hpp
    \brief Flat key/value configuration files.

    Lines are `key = value`; `#` starts a comment.  Model parameters accept
    either raw thresholds (t1, t2) or default probabilities (p1, p2); tranche
    levels are listed as tranche_1, tranche_2, ... with values like
    `quantile:0.55` or `el_multiple:2.0`.
*/

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capalloc/tranches.hpp"
#include "capalloc/vasicek.hpp"

namespace capalloc {

class FlatConfig {
public:
    FlatConfig() = default;

    static FlatConfig parse(std::istream& in);
    static FlatConfig parse_file(const std::string& path);

    bool has(const std::string& key) const { return entries_.count(key) > 0; }
    std::optional<std::string> get(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::uint64_t get_uint(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    //! Model parameters if any of the model keys are present.
    std::optional<VasicekParams> model_params() const;
    //! Tranche levels from tranche_1..tranche_k keys, in order.
    std::optional<TrancheSpec> tranche_spec() const;
    //! Comma-separated weights list under the `weights` key.
    std::optional<std::vector<double>> weights() const;
    //! Gains under g1, g2, ... keys.
    std::optional<std::vector<double>> gains() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace capalloc
