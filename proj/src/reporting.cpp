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

#include "capalloc/reporting.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "capalloc/allocation.hpp"
#include "capalloc/config.hpp"
#include "capalloc/errors.hpp"
#include "capalloc/math/normal.hpp"
#include "capalloc/parallel.hpp"
#include "capalloc/risk_impact.hpp"
#include "capalloc/risk_measures.hpp"
#include "capalloc/scenario.hpp"
#include "capalloc/vecops.hpp"

namespace capalloc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != 0)
            out << ',';
        out << cells[i];
    }
    out << '\n';
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

const char* mode_name(RunMode m) {
    switch (m) {
    case RunMode::Alloc:
        return "alloc";
    case RunMode::Divers:
        return "divers";
    case RunMode::Cdo:
        return "cdo";
    case RunMode::Impact:
        return "impact";
    case RunMode::Figure:
        return "figure";
    }
    return "?";
}

const char* figure_name(FigureKind f) {
    switch (f) {
    case FigureKind::Rorac:
        return "rorac";
    case FigureKind::TrancheEl:
        return "tranche-el";
    case FigureKind::RiskImpact:
        return "risk-impact";
    case FigureKind::Qri:
        return "qri";
    }
    return "?";
}

std::string canonical_serialization(const RunConfig& c) {
    std::ostringstream ss;
    ss << "mode=" << mode_name(c.mode) << ";figure=" << figure_name(c.figure)
       << ";scenario_file=" << c.scenario_file.value_or("") << ";model=";
    if (c.model)
        ss << fmt(c.model->t1) << '/' << fmt(c.model->t2) << '/' << fmt(c.model->rho1)
           << '/' << fmt(c.model->rho2) << '/' << fmt(c.model->tau);
    ss << ";gains=";
    for (double g : c.gains)
        ss << fmt(g) << '/';
    ss << ";tranches=";
    for (const auto& l : c.tranche_spec.levels)
        ss << (l.type == TrancheLevelSpec::Type::Quantile ? "q" : "el") << fmt(l.value)
           << '/';
    ss << ";weights=";
    if (c.weights)
        for (double w : *c.weights)
            ss << fmt(w) << '/';
    ss << ";alpha=" << fmt(c.alpha) << ";c=" << (c.c ? fmt(*c.c) : "auto")
       << ";measure=" << c.measure << ";ul=" << (c.ul ? 1 : 0)
       << ";var_method=" << c.var_method << ";rescale=" << (c.rescale_var_contrib ? 1 : 0)
       << ";qri_all=" << (c.qri_all ? 1 : 0)
       << ";scenarios=" << c.scenarios << ";seed=" << c.seed << ";grid=" << fmt(c.grid_start)
       << ':' << fmt(c.grid_stop) << ':' << fmt(c.grid_step)
       << ";bandwidth=" << (c.bandwidth ? fmt(*c.bandwidth) : "auto");
    return ss.str();
}

void provenance(const RunConfig& c, std::ostream& out) {
    char hash[20];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(c.config_hash()));
    out << "# capalloc mode=" << mode_name(c.mode);
    if (c.mode == RunMode::Figure)
        out << " figure=" << figure_name(c.figure);
    out << " config_hash=" << hash << " seed=" << c.seed << " scenarios=" << c.scenarios
        << " measure=" << c.measure << (c.ul ? "+ul" : "") << " alpha=" << fmt(c.alpha)
        << '\n';
}

RiskMeasureSpec make_measure_spec(const RunConfig& cfg) {
    RiskMeasureSpec spec = [&] {
        if (cfg.measure == "sd")
            return RiskMeasureSpec::std_dev(cfg.c ? *cfg.c : chebychev_c(cfg.alpha));
        if (cfg.measure == "var")
            return RiskMeasureSpec::value_at_risk(cfg.alpha);
        if (cfg.measure == "es")
            return RiskMeasureSpec::expected_shortfall(cfg.alpha);
        throw ValidationError("measure must be one of sd, var, es");
    }();
    return cfg.ul ? spec.with_unexpected_loss() : spec;
}

KernelConfig make_kernel_config(const RunConfig& cfg) {
    return cfg.bandwidth ? KernelConfig::fixed(*cfg.bandwidth) : KernelConfig::silverman();
}

ScenarioMatrix load_file(const RunConfig& cfg, Convention convention) {
    if (!cfg.scenario_file)
        throw ValidationError("this mode needs a scenario_file entry in the config");
    std::ifstream in(*cfg.scenario_file);
    if (!in)
        throw ValidationError("cannot open scenario file '" + *cfg.scenario_file + "'");
    return load_scenarios(in, convention);
}

PortfolioWeights weights_for(const RunConfig& cfg, const ScenarioMatrix& matrix) {
    if (cfg.weights) {
        PortfolioWeights w{*cfg.weights};
        w.check_against(matrix);
        return w;
    }
    return PortfolioWeights::ones(matrix.assets());
}

ContributionReport contributions_for(const RunConfig& cfg, const ScenarioMatrix& matrix,
                                     const PortfolioWeights& w) {
    ContributionReport r = [&] {
        if (cfg.measure == "sd")
            return euler_stddev_contrib(matrix, w,
                                        cfg.c ? *cfg.c : chebychev_c(cfg.alpha));
        if (cfg.measure == "es")
            return euler_es_contrib(matrix, w, cfg.alpha);
        if (cfg.measure == "var") {
            if (cfg.var_method == "kernel")
                return euler_var_contrib_kernel(matrix, w, cfg.alpha,
                                                make_kernel_config(cfg),
                                                cfg.rescale_var_contrib);
            if (cfg.var_method == "linear")
                return euler_var_contrib_linear(matrix, w, cfg.alpha);
            throw ValidationError("var_method must be kernel or linear");
        }
        throw ValidationError("measure must be one of sd, var, es");
    }();
    if (cfg.ul && cfg.measure != "sd")
        r = apply_unexpected_loss(std::move(r), matrix, w);
    return r;
}

} // namespace

void RunConfig::validate() const {
    const bool file_mode = mode != RunMode::Figure;
    if (file_mode) {
        if (!scenario_file)
            throw ValidationError("modes alloc/divers/cdo/impact need a scenario_file");
        if (model)
            throw ValidationError("scenario file and model parameters are exclusive");
    } else {
        if (scenario_file)
            throw ValidationError("figure modes simulate the model; drop scenario_file");
    }
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("alpha must lie in (0, 1)");
    if (c && !(*c > 0.0))
        throw ValidationError("c must be positive");
    if (scenarios < 1)
        throw ValidationError("scenarios must be at least 1");
    if (!(grid_step > 0.0))
        throw ValidationError("grid step must be positive");
    if (!(grid_start >= 0.0 && grid_stop <= 1.0 && grid_start <= grid_stop))
        throw ValidationError("grid must satisfy 0 <= start <= stop <= 1");
    if (bandwidth && !(*bandwidth > 0.0))
        throw ValidationError("bandwidth must be positive");
}

std::vector<double> RunConfig::grid() const {
    std::vector<double> u;
    const auto count =
        static_cast<std::size_t>(std::floor((grid_stop - grid_start) / grid_step + 1e-9)) + 1;
    u.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        u.push_back(grid_start + static_cast<double>(i) * grid_step);
    if (!u.empty() && u.back() > grid_stop)
        u.back() = grid_stop;
    return u;
}

std::uint64_t RunConfig::config_hash() const {
    return fnv1a(0xcbf29ce484222325ULL, canonical_serialization(*this));
}

VasicekParams RunConfig::default_model() {
    return VasicekParams::from_pd(0.01, 0.025, 0.2, 0.3, 0.4);
}

TrancheSpec RunConfig::default_tranches() {
    TrancheSpec spec;
    spec.levels = {{TrancheLevelSpec::Type::Quantile, 0.50},
                   {TrancheLevelSpec::Type::Quantile, 0.55},
                   {TrancheLevelSpec::Type::Quantile, 0.999}};
    return spec;
}

namespace {

void run_figure_rorac(const RunConfig& cfg, std::ostream& out) {
    const VasicekParams model = cfg.model.value_or(RunConfig::default_model());
    if (cfg.gains.size() != 2)
        throw ValidationError("figure rorac needs exactly two gains (g1, g2)");
    const FactorSample sample = simulate(model, cfg.scenarios, cfg.seed);
    const std::size_t n = sample.size();

    std::vector<double> values(2 * n);
    for (std::size_t k = 0; k < n; ++k)
        values[k] = cfg.gains[0] - sample.l1[k];
    for (std::size_t k = 0; k < n; ++k)
        values[n + k] = cfg.gains[1] - sample.l2[k];
    const ScenarioMatrix pl(n, {"sub1", "sub2"}, std::move(values),
                            Convention::ProfitLoss);
    const KernelConfig kc = make_kernel_config(cfg);

    write_row(out, {"u", "rorac_portfolio", "rorac_sub1", "rorac_sub2"});
    for (const double u : cfg.grid()) {
        const PortfolioWeights w{{u, 1.0 - u}};
        ContributionReport contrib = euler_var_contrib_kernel(pl, w, cfg.alpha, kc,
                                                              cfg.rescale_var_contrib);
        contrib = apply_unexpected_loss(std::move(contrib), pl, w);
        const RoracReport r = rorac(pl, w, contrib);
        write_row(out, {fmt(u), fmt(r.portfolio), fmt(r.per_asset[0]), fmt(r.per_asset[1])});
    }
}

void run_figure_tranches(const RunConfig& cfg, std::ostream& out) {
    const VasicekParams model = cfg.model.value_or(RunConfig::default_model());
    const TrancheSpec spec =
        cfg.tranche_spec.levels.empty() ? RunConfig::default_tranches() : cfg.tranche_spec;
    const FactorSample sample = simulate(model, cfg.scenarios, cfg.seed);
    const std::size_t n = sample.size();

    std::vector<double> values;
    values.reserve(2 * n);
    values.insert(values.end(), sample.l1.begin(), sample.l1.end());
    values.insert(values.end(), sample.l2.begin(), sample.l2.end());
    const ScenarioMatrix losses(n, {"sub1", "sub2"}, std::move(values),
                                Convention::LossOnly);
    const KernelConfig kc = make_kernel_config(cfg);
    const std::size_t m = spec.tranches();

    std::vector<std::string> header{"u"};
    for (std::size_t j = 1; j <= m; ++j) {
        header.push_back("el_ratio_" + std::to_string(j));
        header.push_back("sub1_ratio_" + std::to_string(j));
        header.push_back("sub2_ratio_" + std::to_string(j));
    }
    write_row(out, header);

    for (const double u : cfg.grid()) {
        const PortfolioWeights w{{u, 1.0 - u}};
        const auto comp = tranche_loss_components(losses, w, spec, kc);
        double portfolio_el = 0.0;
        for (double e : comp.asset_el)
            portfolio_el += e;
        std::vector<std::string> row{fmt(u)};
        for (std::size_t j = 0; j < m; ++j) {
            row.push_back(fmt(comp.tranche_el[j] / portfolio_el));
            for (std::size_t k = 0; k < 2; ++k) {
                const double el_k = vecops::mean(losses.column(k));
                row.push_back(fmt(comp.unit_component(k, j) / el_k));
            }
        }
        write_row(out, row);
    }
}

void run_figure_impact(const RunConfig& cfg, std::ostream& out) {
    const VasicekParams model = cfg.model.value_or(RunConfig::default_model());
    const FactorSample sample = simulate(model, cfg.scenarios, cfg.seed);
    const auto basis1 = conditional_el_basis(model, Factor::S1, sample);
    const auto basis2 = conditional_el_basis(model, Factor::S2, sample);
    const KernelConfig kc = make_kernel_config(cfg);
    const bool with_qri = cfg.figure == FigureKind::Qri;

    std::vector<std::string> header{"u"};
    for (const char* f : {"s1", "s2"}) {
        header.push_back(std::string(f) + "_ri_sigma");
        header.push_back(std::string(f) + "_ri_var");
        header.push_back(std::string(f) + "_ri_es");
        if (with_qri)
            header.push_back(std::string(f) + "_qri_es");
    }
    write_row(out, header);

    for (const double u : cfg.grid()) {
        const auto loss = portfolio_loss(sample, u);
        std::vector<std::string> row{fmt(u)};
        for (const auto* basis : {&basis1, &basis2}) {
            const auto m = conditional_el_at(*basis, u);
            row.push_back(fmt(risk_impact_sigma(m, loss)));
            row.push_back(fmt(risk_impact_var(m, loss, cfg.alpha, kc)));
            row.push_back(fmt(risk_impact_es(m, loss, cfg.alpha)));
            if (with_qri)
                row.push_back(fmt(quasi_ri_es(m, loss, cfg.alpha)));
        }
        write_row(out, row);
    }
}

} // namespace

void run_figure(const RunConfig& cfg, std::ostream& out) {
    provenance(cfg, out);
    switch (cfg.figure) {
    case FigureKind::Rorac:
        run_figure_rorac(cfg, out);
        return;
    case FigureKind::TrancheEl:
        run_figure_tranches(cfg, out);
        return;
    case FigureKind::RiskImpact:
    case FigureKind::Qri:
        run_figure_impact(cfg, out);
        return;
    }
    throw ValidationError("unknown figure kind");
}

void run_alloc(const RunConfig& cfg, std::ostream& out) {
    const ScenarioMatrix matrix = load_file(cfg, Convention::ProfitLoss);
    const PortfolioWeights w = weights_for(cfg, matrix);
    const RiskMeasureSpec spec = make_measure_spec(cfg);
    const ContributionReport contrib = contributions_for(cfg, matrix, w);
    const RoracReport r = rorac(matrix, w, contrib);
    const double di = diversification_index(spec, matrix, w);
    const MarginalDiversification mdi =
        marginal_diversification_index(spec, matrix, w, contrib);

    provenance(cfg, out);
    out << "# method=" << contrib_method_name(contrib.method) << " total="
        << fmt(contrib.total) << " residual=" << fmt(contrib.residual)
        << " portfolio_rorac=" << fmt(r.portfolio) << " diversification_index=" << fmt(di)
        << (contrib.degenerate ? " degenerate=1" : "") << '\n';
    write_row(out, {"asset", "weight", "mean_pl", "stand_alone", "contribution", "rorac",
                    "marginal_di"});
    std::vector<double> scaled(matrix.scenarios());
    for (std::size_t i = 0; i < matrix.assets(); ++i) {
        const auto col = matrix.column(i);
        for (std::size_t k = 0; k < scaled.size(); ++k)
            scaled[k] = w.u[i] * col[k];
        const double stand_alone = evaluate(spec, scaled);
        write_row(out, {matrix.asset_names()[i], fmt(w.u[i]), fmt(vecops::mean(col)),
                        fmt(stand_alone), fmt(contrib.per_asset[i]), fmt(r.per_asset[i]),
                        fmt(mdi.index[i])});
    }
}

void run_divers(const RunConfig& cfg, std::ostream& out) {
    const ScenarioMatrix matrix = load_file(cfg, Convention::ProfitLoss);
    const PortfolioWeights w = weights_for(cfg, matrix);
    const RiskMeasureSpec spec = make_measure_spec(cfg);
    const ContributionReport contrib = contributions_for(cfg, matrix, w);
    const double di = diversification_index(spec, matrix, w);
    const MarginalDiversification mdi =
        marginal_diversification_index(spec, matrix, w, contrib);

    provenance(cfg, out);
    out << "# diversification_index=" << fmt(di) << " total=" << fmt(contrib.total) << '\n';
    write_row(out, {"asset", "weight", "contribution", "marginal_di"});
    for (std::size_t i = 0; i < matrix.assets(); ++i)
        write_row(out, {matrix.asset_names()[i], fmt(w.u[i]), fmt(contrib.per_asset[i]),
                        fmt(mdi.index[i])});
}

void run_cdo(const RunConfig& cfg, std::ostream& out) {
    const ScenarioMatrix losses = load_file(cfg, Convention::LossOnly);
    const PortfolioWeights w = weights_for(cfg, losses);
    const TrancheSpec spec =
        cfg.tranche_spec.levels.empty() ? RunConfig::default_tranches() : cfg.tranche_spec;
    const auto comp = tranche_loss_components(losses, w, spec, make_kernel_config(cfg));

    provenance(cfg, out);
    out << "# levels=";
    for (std::size_t j = 0; j < comp.levels.size(); ++j)
        out << (j ? "/" : "") << fmt(comp.levels[j]);
    out << '\n';

    std::vector<std::string> header{"asset"};
    for (std::size_t j = 1; j <= comp.tranches; ++j)
        header.push_back("tranche_" + std::to_string(j));
    header.push_back("row_sum");
    header.push_back("asset_el");
    write_row(out, header);

    const auto rows = comp.row_sums();
    for (std::size_t k = 0; k < comp.assets; ++k) {
        std::vector<std::string> row{losses.asset_names()[k]};
        for (std::size_t j = 0; j < comp.tranches; ++j)
            row.push_back(fmt(comp.component(k, j)));
        row.push_back(fmt(rows[k]));
        row.push_back(fmt(comp.asset_el[k]));
        write_row(out, row);
    }
    const auto cols = comp.column_sums();
    std::vector<std::string> sum_row{"column_sum"};
    std::vector<std::string> el_row{"tranche_el"};
    for (std::size_t j = 0; j < comp.tranches; ++j) {
        sum_row.push_back(fmt(cols[j]));
        el_row.push_back(fmt(comp.tranche_el[j]));
    }
    sum_row.insert(sum_row.end(), {"", ""});
    el_row.insert(el_row.end(), {"", ""});
    write_row(out, sum_row);
    write_row(out, el_row);
}

void run_impact(const RunConfig& cfg, std::ostream& out) {
    const ScenarioMatrix table = load_file(cfg, Convention::ProfitLoss);
    if (table.assets() < 2)
        throw ValidationError(
            "impact mode needs a loss column plus at least one factor column");
    const auto loss = table.column(0);
    const KernelConfig kc = make_kernel_config(cfg);

    provenance(cfg, out);
    std::vector<std::string> header{"factor", "ri_sigma", "ri_var", "ri_es", "qri_es"};
    if (cfg.qri_all) {
        header.push_back("qri_sigma");
        header.push_back("qri_var");
    }
    write_row(out, header);
    for (std::size_t j = 1; j < table.assets(); ++j) {
        const auto m = table.column(j);
        const auto report =
            risk_impact_report(m, loss, cfg.alpha, kc, table.asset_names()[j]);
        std::vector<std::string> row{report.factor_label, fmt(report.ri_sigma),
                                     fmt(report.ri_var), fmt(report.ri_es),
                                     fmt(report.qri_es)};
        if (cfg.qri_all) {
            row.push_back(fmt(quasi_ri_sigma(m, loss)));
            row.push_back(fmt(quasi_ri_var(m, loss, cfg.alpha)));
        }
        write_row(out, row);
    }
}

void run(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    if (cfg.threads > 0)
        ThreadPool::instance().set_thread_count(cfg.threads);
    switch (cfg.mode) {
    case RunMode::Alloc:
        run_alloc(cfg, out);
        return;
    case RunMode::Divers:
        run_divers(cfg, out);
        return;
    case RunMode::Cdo:
        run_cdo(cfg, out);
        return;
    case RunMode::Impact:
        run_impact(cfg, out);
        return;
    case RunMode::Figure:
        run_figure(cfg, out);
        return;
    }
    throw ValidationError("unknown mode");
}

namespace {

RunMode parse_mode(const std::string& s) {
    if (s == "alloc")
        return RunMode::Alloc;
    if (s == "divers")
        return RunMode::Divers;
    if (s == "cdo")
        return RunMode::Cdo;
    if (s == "impact")
        return RunMode::Impact;
    if (s == "figure")
        return RunMode::Figure;
    throw ValidationError("unknown mode '" + s + "' (use alloc|divers|cdo|impact|figure)");
}

FigureKind parse_figure(const std::string& s) {
    if (s == "rorac")
        return FigureKind::Rorac;
    if (s == "tranche-el")
        return FigureKind::TrancheEl;
    if (s == "risk-impact")
        return FigureKind::RiskImpact;
    if (s == "qri")
        return FigureKind::Qri;
    throw ValidationError("unknown figure '" + s +
                          "' (use rorac|tranche-el|risk-impact|qri)");
}

void parse_grid_string(const std::string& s, RunConfig& cfg) {
    double a = 0.0, b = 0.0, step = 0.0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3)
        throw ValidationError("grid must look like start:stop:step");
    cfg.grid_start = a;
    cfg.grid_stop = b;
    cfg.grid_step = step;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
    const FlatConfig fc = FlatConfig::parse_file(path);
    if (const auto v = fc.get("scenario_file"))
        cfg.scenario_file = *v;
    if (auto model = fc.model_params())
        cfg.model = *model;
    if (auto gains = fc.gains())
        cfg.gains = *gains;
    if (auto spec = fc.tranche_spec())
        cfg.tranche_spec = *spec;
    if (auto w = fc.weights())
        cfg.weights = *w;
    if (fc.has("alpha"))
        cfg.alpha = fc.get_double("alpha");
    if (fc.has("c"))
        cfg.c = fc.get_double("c");
    if (fc.has("measure"))
        cfg.measure = *fc.get("measure");
    if (fc.has("ul"))
        cfg.ul = fc.get_bool("ul");
    if (fc.has("var_method"))
        cfg.var_method = *fc.get("var_method");
    if (fc.has("rescale_var_contrib"))
        cfg.rescale_var_contrib = fc.get_bool("rescale_var_contrib");
    if (fc.has("scenarios"))
        cfg.scenarios = fc.get_uint("scenarios");
    if (fc.has("seed"))
        cfg.seed = fc.get_uint("seed");
    if (fc.has("grid"))
        parse_grid_string(*fc.get("grid"), cfg);
    if (fc.has("bandwidth"))
        cfg.bandwidth = fc.get_double("bandwidth");
    if (fc.has("out"))
        cfg.out_path = *fc.get("out");
    if (fc.has("threads"))
        cfg.threads = static_cast<unsigned>(fc.get_uint("threads"));
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"capalloc - portfolio risk contributions, tranche loss components and "
                 "factor risk impacts"};
    std::string mode_str;
    app.add_option("mode", mode_str, "alloc|divers|cdo|impact|figure")->required();
    std::string figure_str = "rorac";
    app.add_option("--figure", figure_str, "rorac|tranche-el|risk-impact|qri");
    std::string config_path;
    app.add_option("--config", config_path, "flat key/value config file");
    std::size_t scenarios = 0;
    app.add_option("--scenarios", scenarios, "number of simulated scenarios");
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "random seed");
    double alpha = 0.0;
    app.add_option("--alpha", alpha, "confidence level in (0, 1)");
    double c_scale = 0.0;
    app.add_option("--c", c_scale, "sigma_c scale (default: Chebychev at alpha)");
    std::string grid_str;
    app.add_option("--grid", grid_str, "weight grid start:stop:step");
    double bandwidth = 0.0;
    app.add_option("--bandwidth", bandwidth, "kernel bandwidth override");
    std::string measure;
    app.add_option("--measure", measure, "sd|var|es (alloc/divers)");
    bool ul = false;
    app.add_flag("--ul", ul, "use the unexpected-loss variant");
    std::string var_method;
    app.add_option("--var-method", var_method, "kernel|linear");
    bool rescale = false;
    app.add_flag("--rescale-var-contrib", rescale,
                 "rescale kernel VaR contributions to full allocation");
    bool qri_all = false;
    app.add_flag("--qri-all", qri_all,
                 "impact mode: also emit sigma and VaR quasi-impacts");
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: hardware)");
    std::string out_path;
    app.add_option("--out", out_path, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        RunConfig cfg;
        cfg.mode = parse_mode(mode_str);
        if (!config_path.empty())
            apply_config_file(config_path, cfg);
        if (app.count("--figure") > 0)
            cfg.figure = parse_figure(figure_str);
        if (app.count("--scenarios") > 0)
            cfg.scenarios = scenarios;
        if (app.count("--seed") > 0)
            cfg.seed = seed;
        if (app.count("--alpha") > 0)
            cfg.alpha = alpha;
        if (app.count("--c") > 0)
            cfg.c = c_scale;
        if (app.count("--grid") > 0)
            parse_grid_string(grid_str, cfg);
        if (app.count("--bandwidth") > 0)
            cfg.bandwidth = bandwidth;
        if (app.count("--measure") > 0)
            cfg.measure = measure;
        if (ul)
            cfg.ul = true;
        if (app.count("--var-method") > 0)
            cfg.var_method = var_method;
        if (rescale)
            cfg.rescale_var_contrib = true;
        if (qri_all)
            cfg.qri_all = true;
        if (app.count("--threads") > 0)
            cfg.threads = threads;
        if (app.count("--out") > 0)
            cfg.out_path = out_path;

        if (cfg.out_path) {
            std::ofstream file(*cfg.out_path);
            if (!file)
                throw ValidationError("cannot open output file '" + *cfg.out_path + "'");
            run(cfg, file);
        } else {
            run(cfg, out);
        }
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DegeneracyError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace capalloc
