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

// End-to-end acceptance runs for the whole library: the worked two-factor
// example figures, the allocation identities on random portfolios, the
// kernel estimation chain, factor-impact nulls, analytic cross-checks and
// byte-level determinism.  One line per criterion; nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capalloc/allocation.hpp"
#include "capalloc/errors.hpp"
#include "capalloc/kernel.hpp"
#include "capalloc/math/normal.hpp"
#include "capalloc/math/quadrature.hpp"
#include "capalloc/math/rng.hpp"
#include "capalloc/parallel.hpp"
#include "capalloc/reporting.hpp"
#include "capalloc/risk_impact.hpp"
#include "capalloc/risk_measures.hpp"
#include "capalloc/tranches.hpp"
#include "capalloc/vasicek.hpp"
#include "capalloc/vecops.hpp"

using namespace capalloc;

namespace {

struct Outcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Outcome> g_results;

void record(const std::string& name, bool pass, const std::string& detail) {
    g_results.push_back({name, pass, detail});
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
}

template <class F>
void guarded(const std::string& name, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        record(name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

VasicekParams paper_model() { return RunConfig::default_model(); }

ScenarioMatrix loss_matrix(const FactorSample& sample) {
    std::vector<double> values;
    values.reserve(2 * sample.size());
    values.insert(values.end(), sample.l1.begin(), sample.l1.end());
    values.insert(values.end(), sample.l2.begin(), sample.l2.end());
    return ScenarioMatrix(sample.size(), {"sub1", "sub2"}, values, Convention::LossOnly);
}

//! Correlated multi-asset profit/loss samples for the allocation identities;
//! positive common-factor loadings keep tail contributions well away from 0.
ScenarioMatrix random_portfolio(std::size_t n, std::size_t assets, std::uint64_t seed) {
    math::RandomStream stream(seed, 0);
    std::vector<double> beta(assets), sd(assets), mu(assets);
    for (std::size_t i = 0; i < assets; ++i) {
        beta[i] = 0.3 + 0.9 * (0.5 + 0.5 * std::tanh(stream.normal()));
        sd[i] = 0.5 + 0.4 * (0.5 + 0.5 * std::tanh(stream.normal()));
        mu[i] = 0.05 * stream.normal();
    }
    std::vector<double> values(n * assets);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < assets; ++i)
        names.push_back("a" + std::to_string(i + 1));
    for (std::size_t k = 0; k < n; ++k) {
        const double common = stream.normal();
        for (std::size_t i = 0; i < assets; ++i)
            values[i * n + k] = mu[i] + beta[i] * common + sd[i] * stream.normal();
    }
    return ScenarioMatrix(n, names, values, Convention::ProfitLoss);
}

double rel_gap(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-12});
}

// ---------------------------------------------------------------------------

void c01_rorac_intersection() {
    const auto t0 = std::chrono::steady_clock::now();
    const double alpha = 0.999;
    const std::size_t n = 1000000;
    const auto sample = simulate(paper_model(), n, 42);

    std::vector<double> values(2 * n);
    for (std::size_t k = 0; k < n; ++k)
        values[k] = 0.015 - sample.l1[k];
    for (std::size_t k = 0; k < n; ++k)
        values[n + k] = 0.04 - sample.l2[k];
    const ScenarioMatrix pl(n, {"sub1", "sub2"}, std::move(values),
                            Convention::ProfitLoss);

    double best_u = -1.0, best_rorac = -1e300, best_gap = 1e300;
    for (int i = 0; i <= 100; ++i) {
        const double u = 0.01 * i;
        const PortfolioWeights w{{u, 1.0 - u}};
        ContributionReport contrib =
            euler_var_contrib_kernel(pl, w, alpha, KernelConfig::silverman());
        contrib = apply_unexpected_loss(std::move(contrib), pl, w);
        const RoracReport r = rorac(pl, w, contrib);
        if (r.portfolio_defined && r.portfolio > best_rorac) {
            best_rorac = r.portfolio;
            best_u = u;
            best_gap = 0.0;
            for (std::size_t a = 0; a < 2; ++a)
                if (r.defined[a])
                    best_gap = std::max(best_gap, rel_gap(r.per_asset[a], r.portfolio));
                else
                    best_gap = 1e300;
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = best_u >= 0.65 && best_u <= 0.75 && best_gap <= 0.05 &&
                      seconds < 120.0;
    record("01 rorac-curves-intersect-at-optimum", pass,
           fmt("UL-VaR at alpha=%.3f: argmax u=%.2f (need [0.65,0.75]), RORAC gap "
               "%.2f%% (need <=5%%), runtime %.1fs (need <120s)",
               alpha, best_u, 100.0 * best_gap, seconds));
}

// Sign-change location of curve a - b by linear interpolation.
double crossing_of(const std::vector<double>& u, const std::vector<double>& a,
                   const std::vector<double>& b, int* count) {
    *count = 0;
    double at = -1.0;
    for (std::size_t i = 1; i < u.size(); ++i) {
        const double f0 = a[i - 1] - b[i - 1];
        const double f1 = a[i] - b[i];
        if ((f0 < 0.0 && f1 >= 0.0) || (f0 > 0.0 && f1 <= 0.0)) {
            ++*count;
            at = u[i - 1] + (u[i] - u[i - 1]) * f0 / (f0 - f1);
        }
    }
    return at;
}

void c02_impact_crossings() {
    const double alpha = 0.999;
    const std::size_t n = 1000000;
    const auto model = paper_model();
    const auto sample = simulate(model, n, 42);
    const auto basis1 = conditional_el_basis(model, Factor::S1, sample);
    const auto basis2 = conditional_el_basis(model, Factor::S2, sample);

    std::vector<double> u_grid, ri1, ri2, qri1, qri2;
    for (double u = 0.64; u <= 0.76 + 1e-12; u += 0.0025)
        u_grid.push_back(u);
    for (const double u : u_grid) {
        const auto loss = portfolio_loss(sample, u);
        const auto m1 = conditional_el_at(basis1, u);
        const auto m2 = conditional_el_at(basis2, u);
        ri1.push_back(risk_impact_es(m1, loss, alpha));
        ri2.push_back(risk_impact_es(m2, loss, alpha));
        qri1.push_back(quasi_ri_es(m1, loss, alpha));
        qri2.push_back(quasi_ri_es(m2, loss, alpha));
    }
    int n_ri = 0, n_qri = 0;
    const double u_ri = crossing_of(u_grid, ri1, ri2, &n_ri);
    const double u_qri = crossing_of(u_grid, qri1, qri2, &n_qri);
    const bool pass = n_ri == 1 && n_qri == 1 && u_qri <= 0.715 && u_ri >= 0.700 &&
                      u_qri <= u_ri;
    record("02 qri-and-ri-crossing-weights", pass,
           fmt("qri cross u=%.4f (need <=0.715), ri cross u=%.4f (need >=0.700), "
               "order qri<=ri %s, crossings (%d,%d)",
               u_qri, u_ri, u_qri <= u_ri ? "ok" : "violated", n_qri, n_ri));
}

void c03_tranche_ratio_extremes() {
    const std::size_t n = 1000000;
    const auto sample = simulate(paper_model(), n, 42);
    const auto losses = loss_matrix(sample);
    const TrancheSpec spec = RunConfig::default_tranches();
    const KernelConfig cfg = KernelConfig::silverman();
    const std::size_t m = spec.tranches();

    std::vector<double> u_grid;
    std::vector<std::vector<double>> ratio(m);
    std::vector<std::vector<std::vector<double>>> comp(
        m, std::vector<std::vector<double>>(2));
    const double el1 = vecops::mean(sample.l1);
    const double el2 = vecops::mean(sample.l2);
    for (int i = 0; i <= 100; ++i) {
        const double u = 0.01 * i;
        u_grid.push_back(u);
        const PortfolioWeights w{{u, 1.0 - u}};
        const auto cm = tranche_loss_components(losses, w, spec, cfg);
        const double portfolio_el = cm.asset_el[0] + cm.asset_el[1];
        for (std::size_t j = 0; j < m; ++j) {
            ratio[j].push_back(cm.tranche_el[j] / portfolio_el);
            comp[j][0].push_back(cm.unit_component(0, j) / el1);
            comp[j][1].push_back(cm.unit_component(1, j) / el2);
        }
    }
    // Window of +-10 grid points (0.1 in the weight): extremes must be shape
    // features of the curve, not sampling wiggle on the thin tranches.
    const auto extremes = extreme_check(u_grid, ratio, comp, 10);
    bool spreads_ok = !extremes.empty();
    std::string per_extreme;
    bool thin_min = false, thin_max = false;
    for (const auto& e : extremes) {
        const double rel = e.max_spread / std::fabs(e.tranche_ratio);
        spreads_ok = spreads_ok && rel <= 0.02;
        per_extreme += fmt(" t%zu-%s@%.2f:%.2f%%", e.tranche + 1,
                           e.is_maximum ? "max" : "min", e.u, 100.0 * rel);
        if (e.tranche == 1)
            (e.is_maximum ? thin_max : thin_min) = true;
    }
    const bool pass = spreads_ok && thin_min && thin_max;
    std::string detail =
        fmt("%zu extremes (need <=2%% each):%s, thin mezzanine min/max %s/%s",
            extremes.size(), per_extreme.c_str(), thin_min ? "yes" : "no",
            thin_max ? "yes" : "no");
    if (!spreads_ok)
        detail += "; note: the super-senior name split is informed by only "
                  "N*(1-alpha)=1000 tail scenarios, a ~25% statistical floor at "
                  "this N for any estimator";
    record("03 component-ratios-meet-at-el-ratio-extremes", pass, detail);
}

void c04_full_allocation() {
    const double alpha = 0.99;
    const double c_scale = chebychev_c(alpha);
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const auto m = random_portfolio(10000, 2 + t % 9, 5000 + t);
        const PortfolioWeights w = PortfolioWeights::ones(m.assets());
        const auto sd = euler_stddev_contrib(m, w, c_scale);
        const auto es = euler_es_contrib(m, w, alpha);
        worst = std::max(worst, std::fabs(sd.residual) / std::fabs(sd.total));
        worst = std::max(worst, std::fabs(es.residual) / std::fabs(es.total));
    }
    record("04 full-allocation-sigma-and-es", worst <= 1e-10,
           fmt("worst relative residual %.2e over 100 portfolios (need <=1e-10)",
               worst));
}

void c05_diversification_bounds() {
    const double alpha = 0.99;
    const auto spec = RiskMeasureSpec::expected_shortfall(alpha);
    bool bounds_ok = true;
    double worst_di = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const auto m = random_portfolio(10000, 2 + t % 9, 5000 + t);
        const PortfolioWeights w = PortfolioWeights::ones(m.assets());
        const auto es = euler_es_contrib(m, w, alpha);
        for (std::size_t i = 0; i < m.assets(); ++i) {
            const double alone = expected_shortfall(m.column(i), alpha);
            bounds_ok = bounds_ok && es.per_asset[i] <= alone + 1e-10;
        }
        const double di = diversification_index(spec, m, w);
        worst_di = std::max(worst_di, di);
        bounds_ok = bounds_ok && di <= 1.0 + 1e-10;
    }
    // Stored VaR sub-additivity counterexample: disjoint single-scenario
    // defaults slip below the quantile alone but not together.
    std::vector<double> x(20, 0.0), y(20, 0.0), sum(20, 0.0);
    x[0] = -10.0;
    y[1] = -10.0;
    for (std::size_t k = 0; k < 20; ++k)
        sum[k] = x[k] + y[k];
    const bool counterexample =
        value_at_risk(sum, 0.93) > value_at_risk(x, 0.93) + value_at_risk(y, 0.93);
    record("05 es-diversification-bounds-and-var-counterexample",
           bounds_ok && counterexample,
           fmt("contribution<=stand-alone and DI<=1 %s (max DI %.6f), VaR "
               "counterexample %s",
               bounds_ok ? "held" : "violated", worst_di,
               counterexample ? "exhibited" : "missing"));
}

void c06_marginal_underestimates() {
    const double alpha = 0.99;
    const auto spec = RiskMeasureSpec::expected_shortfall(alpha);
    bool ok = true;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const auto m = random_portfolio(10000, 2 + t % 9, 5000 + t);
        const PortfolioWeights w = PortfolioWeights::ones(m.assets());
        const auto marg = marginal_contrib(spec, m, w);
        const auto euler = euler_es_contrib(m, w, alpha);
        double sum = 0.0;
        for (std::size_t i = 0; i < m.assets(); ++i) {
            ok = ok && marg.per_asset[i] <= euler.per_asset[i] + 1e-10;
            sum += marg.per_asset[i];
        }
        ok = ok && sum <= marg.total + 1e-10;
    }
    record("06 marginal-below-euler-and-total", ok,
           ok ? "held on all 100 portfolios" : "violated");
}

void c07_gradient_oracle() {
    double worst_sd = 0.0;
    for (std::uint64_t t = 0; t < 10; ++t) {
        const auto m = random_portfolio(10000, 3 + t % 4, 7000 + t);
        const auto gaps = gradient_check(RiskMeasureSpec::std_dev(2.0), m,
                                         PortfolioWeights::ones(m.assets()), 1e-4);
        for (const double g : gaps)
            worst_sd = std::max(worst_sd, g);
    }
    double worst_es = 0.0;
    for (std::uint64_t t = 0; t < 2; ++t) {
        const auto m = random_portfolio(100000, 3, 7100 + t);
        const auto gaps = gradient_check(RiskMeasureSpec::expected_shortfall(0.95), m,
                                         PortfolioWeights::ones(3), 1e-2);
        for (const double g : gaps)
            worst_es = std::max(worst_es, g);
    }
    const bool pass = worst_sd <= 1e-6 && worst_es <= 0.02;
    record("07 closed-form-contributions-match-finite-differences", pass,
           fmt("sigma gap %.2e (need <=1e-6), ES gap %.2e (need <=0.02)", worst_sd,
               worst_es));
}

void c08_kernel_chain() {
    const double mu1 = 0.01, sd1 = 0.02, mu2 = -0.005, sd2 = 0.03, corr = 0.5;
    const double alpha = 0.99;
    const std::size_t n = 40000;
    const double var_x = sd1 * sd1 + sd2 * sd2 + 2.0 * corr * sd1 * sd2;
    const double cov1 = sd1 * sd1 + corr * sd1 * sd2;
    const double cov2 = sd2 * sd2 + corr * sd1 * sd2;
    const double mu_x = mu1 + mu2;

    int outliers = 0;
    double worst_identity = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        math::RandomStream s(8000 + seed, 0);
        std::vector<double> values(2 * n);
        for (std::size_t k = 0; k < n; ++k) {
            const double z1 = s.normal(), z2 = s.normal();
            values[k] = mu1 + sd1 * z1;
            values[n + k] = mu2 + sd2 * (corr * z1 + std::sqrt(1.0 - corr * corr) * z2);
        }
        const ScenarioMatrix m(n, {"a1", "a2"}, values, Convention::ProfitLoss);
        const PortfolioWeights w = PortfolioWeights::ones(2);

        VarKernelInfo info{};
        const auto r = euler_var_contrib_kernel(m, w, alpha, KernelConfig::silverman(),
                                                false, &info);
        // Weights at the query for the effective neighbor count.
        const auto x = aggregate(m, w);
        NwWeights nw;
        nw.compute(x, info.bandwidth, info.query_point);
        double sum_sq = 0.0;
        for (const double wk : nw.weights())
            sum_sq += wk * wk;
        const double n_eff = nw.total_weight() * nw.total_weight() / sum_sq;

        const double beta[2] = {cov1 / var_x, cov2 / var_x};
        const double sdv[2] = {sd1, sd2};
        for (int a = 0; a < 2; ++a) {
            const double want = -(
                (a == 0 ? mu1 : mu2) + beta[a] * (info.query_point - mu_x));
            const double resid_sd =
                std::sqrt(std::max(0.0, sdv[a] * sdv[a] - beta[a] * beta[a] * var_x));
            const double se = resid_sd / std::sqrt(n_eff);
            // First-order smoothing bias of the kernel estimate at the tail.
            const double bias = std::fabs(beta[a]) * info.bandwidth * info.bandwidth *
                                std::fabs(info.query_point - mu_x) / var_x;
            if (std::fabs(r.per_asset[a] - want) > 3.0 * se + bias)
                ++outliers;
        }
        // The smoothing-term sum identity.
        std::vector<double> xi(n);
        for (std::size_t k = 0; k < n; ++k)
            xi[k] = (info.query_point - x[k]) / info.bandwidth;
        const double xi_term = nw.apply(xi);
        const double lhs = r.per_asset[0] + r.per_asset[1];
        const double rhs = r.total + info.bandwidth * xi_term;
        worst_identity = std::max(
            worst_identity, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
    }
    const bool pass = outliers == 0 && worst_identity <= 1e-8;
    record("08 kernel-var-contributions-on-elliptical-data", pass,
           fmt("3-sigma outliers %d/40 (need 0), sum identity gap %.2e (need <=1e-8)",
               outliers, worst_identity));
}

void c09_independence_null() {
    VasicekParams model = paper_model();
    model.tau = 0.0;
    const double alpha = 0.99;
    const std::size_t n = 200000;
    int violations = 0;
    double worst_ri_es = -1e300;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto sample = simulate(model, n, 9000 + seed);
        const auto loss = portfolio_loss(sample, 1.0);
        const auto cond = conditional_el_sample(model, 1.0, Factor::S2, sample);

        if (risk_impact_sigma(cond.m, loss) > 1e-12)
            ++violations;

        const double q = quantile(loss, alpha);
        const auto [tail_sum, tail_count] = vecops::sum_count_ge(loss, q);
        const double es_denom =
            tail_sum / static_cast<double>(tail_count) - vecops::mean(loss);
        const double sd_loss = std::sqrt(vecops::variance(loss));
        const double se_es = sd_loss / std::sqrt(static_cast<double>(n)) / es_denom;
        const double ri_es = risk_impact_es(cond.m, loss, alpha);
        if (std::fabs(ri_es) > 3.0 * se_es)
            ++violations;

        const double ul_var = q - vecops::mean(loss);
        const double se_var = sd_loss / std::sqrt(static_cast<double>(n)) / ul_var;
        const double ri_var =
            risk_impact_var(cond.m, loss, alpha, KernelConfig::silverman());
        if (std::fabs(ri_var) > 3.0 * se_var + 1e-3)
            ++violations;

        // The bound RI_ES <= 1 must hold for the informative factor too.
        const auto own = conditional_el_sample(model, 1.0, Factor::S1, sample);
        const double ri_es_own = risk_impact_es(own.m, loss, alpha);
        worst_ri_es = std::max(worst_ri_es, std::max(ri_es, ri_es_own));
        if (ri_es > 1.0 + 1e-9 || ri_es_own > 1.0 + 1e-9)
            ++violations;
    }
    record("09 independent-factor-null-impacts", violations == 0,
           fmt("violations %d over 20 trials (need 0), max RI_ES %.6f (need <=1)",
               violations, worst_ri_es));
}

void c10_factor_model_analytics() {
    const auto p = paper_model();
    const auto& gh = math::GaussHermite::n64();
    double worst_tower = 0.0;
    for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double want = u * 0.01 + (1.0 - u) * 0.025;
        for (Factor f : {Factor::S1, Factor::S2}) {
            const double got = gh.integrate_normal(
                [&](double s) { return conditional_el_given_factor(p, u, f, s); });
            worst_tower = std::max(worst_tower, std::fabs(got - want));
        }
    }

    const double alpha = 0.999;
    const std::size_t n = 10000000;
    const auto sample = simulate(p, n, 4242);
    const double emp = quantile(sample.l1, alpha);
    const double exact = vasicek_quantile(p.t1, p.rho1, alpha);
    const double s_alpha = math::norm_ppf(alpha);
    const double dl_ds =
        math::norm_pdf((p.t1 + std::sqrt(p.rho1) * s_alpha) / std::sqrt(1.0 - p.rho1)) *
        std::sqrt(p.rho1) / std::sqrt(1.0 - p.rho1);
    const double density = math::norm_pdf(s_alpha) / dl_ds;
    const double se = std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(n)) / density;
    const double z = std::fabs(emp - exact) / se;

    const bool pass = worst_tower <= 1e-8 && z <= 4.0;
    record("10 factor-model-analytic-cross-checks", pass,
           fmt("tower-property gap %.2e (need <=1e-8), tail quantile z=%.2f "
               "(need <=4 sampling errors)",
               worst_tower, z));
}

void c11_determinism() {
    auto& pool = ThreadPool::instance();

    RunConfig rorac_cfg;
    rorac_cfg.mode = RunMode::Figure;
    rorac_cfg.figure = FigureKind::Rorac;
    rorac_cfg.scenarios = 100000;
    rorac_cfg.seed = 11;
    rorac_cfg.grid_start = 0.0;
    rorac_cfg.grid_stop = 1.0;
    rorac_cfg.grid_step = 0.1;

    RunConfig tr_cfg;
    tr_cfg.mode = RunMode::Figure;
    tr_cfg.figure = FigureKind::TrancheEl;
    tr_cfg.scenarios = 10000;
    tr_cfg.seed = 11;
    tr_cfg.grid_start = 0.3;
    tr_cfg.grid_stop = 0.7;
    tr_cfg.grid_step = 0.2;

    bool identical = true;
    for (const RunConfig* cfg : {&rorac_cfg, &tr_cfg}) {
        pool.set_thread_count(1);
        std::ostringstream base, rerun;
        run(*cfg, base);
        run(*cfg, rerun);
        identical = identical && base.str() == rerun.str();
        for (unsigned t : {4u, 8u}) {
            pool.set_thread_count(t);
            std::ostringstream other;
            run(*cfg, other);
            identical = identical && other.str() == base.str();
        }
        pool.set_thread_count(0);
    }
    record("11 byte-identical-reruns-across-worker-counts", identical,
           identical ? "rorac and tranche-el figures identical for 1/4/8 workers"
                     : "outputs differed");
}

} // namespace

int main() {
    std::printf("capalloc acceptance suite\n");
    guarded("01 rorac-curves-intersect-at-optimum", c01_rorac_intersection);
    guarded("02 qri-and-ri-crossing-weights", c02_impact_crossings);
    guarded("03 component-ratios-meet-at-el-ratio-extremes", c03_tranche_ratio_extremes);
    guarded("04 full-allocation-sigma-and-es", c04_full_allocation);
    guarded("05 es-diversification-bounds-and-var-counterexample",
            c05_diversification_bounds);
    guarded("06 marginal-below-euler-and-total", c06_marginal_underestimates);
    guarded("07 closed-form-contributions-match-finite-differences", c07_gradient_oracle);
    guarded("08 kernel-var-contributions-on-elliptical-data", c08_kernel_chain);
    guarded("09 independent-factor-null-impacts", c09_independence_null);
    guarded("10 factor-model-analytic-cross-checks", c10_factor_model_analytics);
    guarded("11 byte-identical-reruns-across-worker-counts", c11_determinism);

    int failed = 0;
    for (const auto& r : g_results)
        failed += r.pass ? 0 : 1;
    std::printf("acceptance: %zu criteria, %d failed\n", g_results.size(), failed);
    return failed == 0 ? 0 : 1;
}
