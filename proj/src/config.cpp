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

#include "capalloc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "capalloc/errors.hpp"
#include "capalloc/math/normal.hpp"

namespace capalloc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw ValidationError("config: key '" + key + "': cannot parse '" + text +
                              "' as a number");
    return v;
}

} // namespace

FlatConfig FlatConfig::parse(std::istream& in) {
    FlatConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::string t = trim(line);
        if (t.empty())
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config: line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ValidationError("config: line " + std::to_string(lineno) +
                                  ": empty key or value");
        cfg.entries_[key] = value;
    }
    return cfg;
}

FlatConfig FlatConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("config: cannot open '" + path + "'");
    return parse(in);
}

std::optional<std::string> FlatConfig::get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

double FlatConfig::get_double(const std::string& key) const {
    const auto v = get(key);
    if (!v)
        throw ValidationError("config: missing key '" + key + "'");
    return parse_double(key, *v);
}

std::uint64_t FlatConfig::get_uint(const std::string& key) const {
    const auto v = get(key);
    if (!v)
        throw ValidationError("config: missing key '" + key + "'");
    std::uint64_t out = 0;
    const char* end = v->data() + v->size();
    const auto [ptr, ec] = std::from_chars(v->data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ValidationError("config: key '" + key + "': cannot parse '" + *v +
                              "' as an unsigned integer");
    return out;
}

bool FlatConfig::get_bool(const std::string& key) const {
    const auto v = get(key);
    if (!v)
        throw ValidationError("config: missing key '" + key + "'");
    if (*v == "true" || *v == "1" || *v == "yes")
        return true;
    if (*v == "false" || *v == "0" || *v == "no")
        return false;
    throw ValidationError("config: key '" + key + "': expected a boolean, got '" + *v + "'");
}

std::optional<VasicekParams> FlatConfig::model_params() const {
    const bool any = has("t1") || has("t2") || has("p1") || has("p2") || has("rho1") ||
                     has("rho2") || has("tau");
    if (!any)
        return std::nullopt;

    VasicekParams p{};
    if (has("t1") && has("p1"))
        throw ValidationError("config: give either t1 or p1, not both");
    if (has("t2") && has("p2"))
        throw ValidationError("config: give either t2 or p2, not both");
    if (has("t1"))
        p.t1 = get_double("t1");
    else if (has("p1"))
        p.t1 = math::norm_ppf(get_double("p1"));
    else
        throw ValidationError("config: model needs t1 or p1");
    if (has("t2"))
        p.t2 = get_double("t2");
    else if (has("p2"))
        p.t2 = math::norm_ppf(get_double("p2"));
    else
        throw ValidationError("config: model needs t2 or p2");
    p.rho1 = get_double("rho1");
    p.rho2 = get_double("rho2");
    p.tau = get_double("tau");
    p.validate();
    return p;
}

std::optional<TrancheSpec> FlatConfig::tranche_spec() const {
    TrancheSpec spec;
    for (std::size_t i = 1;; ++i) {
        const auto v = get("tranche_" + std::to_string(i));
        if (!v)
            break;
        const auto colon = v->find(':');
        if (colon == std::string::npos)
            throw ValidationError("config: tranche_" + std::to_string(i) +
                                  ": expected 'quantile:X' or 'el_multiple:X'");
        const std::string type = trim(v->substr(0, colon));
        const double value =
            parse_double("tranche_" + std::to_string(i), trim(v->substr(colon + 1)));
        TrancheLevelSpec level{};
        if (type == "quantile")
            level.type = TrancheLevelSpec::Type::Quantile;
        else if (type == "el_multiple")
            level.type = TrancheLevelSpec::Type::ElMultiple;
        else
            throw ValidationError("config: tranche_" + std::to_string(i) +
                                  ": unknown level type '" + type + "'");
        level.value = value;
        level.validate();
        spec.levels.push_back(level);
    }
    if (spec.levels.empty())
        return std::nullopt;
    return spec;
}

std::optional<std::vector<double>> FlatConfig::weights() const {
    const auto v = get("weights");
    if (!v)
        return std::nullopt;
    std::vector<double> w;
    std::stringstream ss(*v);
    std::string cell;
    while (std::getline(ss, cell, ','))
        w.push_back(parse_double("weights", trim(cell)));
    return w;
}

std::optional<std::vector<double>> FlatConfig::gains() const {
    if (!has("g1"))
        return std::nullopt;
    std::vector<double> g;
    for (std::size_t i = 1;; ++i) {
        const auto v = get("g" + std::to_string(i));
        if (!v)
            break;
        g.push_back(parse_double("g" + std::to_string(i), *v));
    }
    return g;
}

} // namespace capalloc
