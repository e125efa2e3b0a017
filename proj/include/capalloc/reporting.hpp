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

/*! \file capalloc/reporting.hpp
    \brief Run configurations, curve/table emission and the CLI entry point.

    Output is CSV with a `#`-prefixed provenance header (config hash, seed,
    scenario count, measure).  Figure modes draw one factor sample and reuse
    it across the whole weight grid, so curves are smooth in the weight, and
    rerunning with the same seed and configuration produces byte-identical
    files for any worker count.
*/

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "capalloc/tranches.hpp"
#include "capalloc/vasicek.hpp"

namespace capalloc {

enum class RunMode { Alloc, Divers, Cdo, Impact, Figure };
enum class FigureKind { Rorac, TrancheEl, RiskImpact, Qri };

struct RunConfig {
    RunMode mode = RunMode::Figure;
    FigureKind figure = FigureKind::Rorac;

    //! Exactly one of scenario_file / model drives a run: file modes (alloc,
    //! divers, cdo, impact) read scenarios, figure modes simulate the model.
    std::optional<std::string> scenario_file;
    std::optional<VasicekParams> model;

    std::vector<double> gains = {0.015, 0.04};
    TrancheSpec tranche_spec;
    std::optional<std::vector<double>> weights;

    double alpha = 0.999;
    std::optional<double> c; //!< sigma_c scale; Chebychev calibration if absent
    std::string measure = "es";
    bool ul = false;
    std::string var_method = "kernel";
    bool rescale_var_contrib = false;
    bool qri_all = false; //!< impact mode: also emit sigma/VaR quasi-impacts

    std::size_t scenarios = 1000000;
    std::uint64_t seed = 42;
    double grid_start = 0.0;
    double grid_stop = 1.0;
    double grid_step = 0.01;
    std::optional<double> bandwidth;
    std::optional<std::string> out_path;
    unsigned threads = 0; //!< 0 keeps the current pool size

    void validate() const;
    std::vector<double> grid() const;
    //! FNV-1a hash over the canonical key=value serialization.
    std::uint64_t config_hash() const;

    //! The worked two-factor example parameters.
    static VasicekParams default_model();
    //! Its tranche boundaries: quantiles at 50%, 55% and 99.9%.
    static TrancheSpec default_tranches();
};

void run_figure(const RunConfig& cfg, std::ostream& out);
void run_alloc(const RunConfig& cfg, std::ostream& out);
void run_divers(const RunConfig& cfg, std::ostream& out);
void run_cdo(const RunConfig& cfg, std::ostream& out);
void run_impact(const RunConfig& cfg, std::ostream& out);

//! Dispatch on cfg.mode.
void run(const RunConfig& cfg, std::ostream& out);

//! Full command-line entry: parses arguments, loads the config file, runs,
//! writes the table to --out or stdout.  Returns 0 on success, 1 on a
//! computation degeneracy, 2 on input validation failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace capalloc
