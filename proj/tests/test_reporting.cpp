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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "capalloc/config.hpp"
#include "capalloc/errors.hpp"
#include "capalloc/parallel.hpp"
#include "capalloc/reporting.hpp"

using namespace capalloc;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path("/tmp/capalloc_test_" + name) {
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    return cells;
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::vector<const char*> argv{"capalloc"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text)
        *out_text = out.str();
    if (err_text)
        *err_text = err.str();
    return code;
}

} // namespace

TEST_SUITE_BEGIN("reporting");

TEST_CASE("flat config parsing") {
    std::istringstream in("# model\n"
                          "p1 = 0.01\n"
                          "p2 = 0.025\n"
                          "rho1 = 0.2\n"
                          "rho2 = 0.3\n"
                          "tau = 0.4\n"
                          "g1 = 0.015\n"
                          "g2 = 0.04\n"
                          "tranche_1 = quantile:0.50\n"
                          "tranche_2 = quantile:0.55\n"
                          "tranche_3 = quantile:0.999\n"
                          "weights = 1.0, 0.5\n"
                          "alpha = 0.995  # trailing comment\n");
    const auto cfg = FlatConfig::parse(in);
    const auto model = cfg.model_params();
    REQUIRE(model.has_value());
    CHECK(model->rho1 == 0.2);
    CHECK(model->tau == 0.4);
    const auto spec = cfg.tranche_spec();
    REQUIRE(spec.has_value());
    CHECK(spec->levels.size() == 3);
    CHECK(spec->levels[2].value == 0.999);
    const auto w = cfg.weights();
    REQUIRE(w.has_value());
    CHECK(*w == std::vector<double>{1.0, 0.5});
    CHECK(cfg.get_double("alpha") == 0.995);
    const auto g = cfg.gains();
    REQUIRE(g.has_value());
    CHECK(*g == std::vector<double>{0.015, 0.04});
}

TEST_CASE("flat config error paths") {
    {
        std::istringstream in("just a line without equals\n");
        CHECK_THROWS_AS(FlatConfig::parse(in), ValidationError);
    }
    {
        std::istringstream in("t1 = -2.3\np1 = 0.01\nrho1 = 0.2\nrho2 = 0.3\ntau = 0\n"
                              "t2 = -2\n");
        const auto cfg = FlatConfig::parse(in);
        CHECK_THROWS_WITH_AS(cfg.model_params(), doctest::Contains("either t1 or p1"),
                             ValidationError);
    }
    {
        std::istringstream in("tranche_1 = parabola:0.5\n");
        const auto cfg = FlatConfig::parse(in);
        CHECK_THROWS_AS(cfg.tranche_spec(), ValidationError);
    }
}

TEST_CASE("figure output is deterministic across reruns and worker counts") {
    RunConfig cfg;
    cfg.mode = RunMode::Figure;
    cfg.figure = FigureKind::Rorac;
    cfg.scenarios = 20000;
    cfg.seed = 7;
    cfg.grid_start = 0.2;
    cfg.grid_stop = 0.8;
    cfg.grid_step = 0.2;

    auto& pool = ThreadPool::instance();
    pool.set_thread_count(1);
    std::ostringstream first, second;
    run(cfg, first);
    run(cfg, second);
    CHECK(first.str() == second.str());

    for (unsigned t : {4u, 8u}) {
        pool.set_thread_count(t);
        std::ostringstream again;
        run(cfg, again);
        CHECK(again.str() == first.str());
    }
    pool.set_thread_count(1);

    RunConfig other = cfg;
    other.seed = 8;
    std::ostringstream different;
    run(other, different);
    CHECK(different.str() != first.str());
}

TEST_CASE("provenance header carries the run fingerprint") {
    RunConfig cfg;
    cfg.mode = RunMode::Figure;
    cfg.figure = FigureKind::Qri;
    cfg.scenarios = 5000;
    cfg.seed = 123;
    cfg.grid_start = 0.5;
    cfg.grid_stop = 0.5;
    cfg.grid_step = 0.1;
    std::ostringstream out;
    run(cfg, out);
    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0].find("# capalloc mode=figure figure=qri") == 0);
    CHECK(lines[0].find("seed=123") != std::string::npos);
    CHECK(lines[0].find("scenarios=5000") != std::string::npos);
    CHECK(lines[0].find("config_hash=") != std::string::npos);
    // Header plus exactly one grid row.
    CHECK(lines[1] ==
          "u,s1_ri_sigma,s1_ri_var,s1_ri_es,s1_qri_es,s2_ri_sigma,s2_ri_var,s2_ri_es,"
          "s2_qri_es");
    CHECK(lines.size() == 3);
}

TEST_CASE("alloc mode reproduces the ES hand example through the CLI") {
    const TempFile csv("alloc.csv", "a1,a2\n-3,-2\n-1,0\n0,1\n1,1\n");
    const TempFile conf("alloc.conf", "scenario_file = " + csv.path + "\n");
    std::string out;
    const int code =
        cli({"alloc", "--config", conf.path, "--measure", "es", "--alpha", "0.8"}, &out);
    REQUIRE(code == 0);
    const auto lines = split_lines(out);
    // Two # lines, the column header, then one row per asset.
    REQUIRE(lines.size() == 5);
    CHECK(lines[2] == "asset,weight,mean_pl,stand_alone,contribution,rorac,marginal_di");
    const auto a1 = split_cells(lines[3]);
    const auto a2 = split_cells(lines[4]);
    CHECK(a1[0] == "a1");
    CHECK(a1[4] == "3"); // worst-scenario conditioning at alpha = 0.8
    CHECK(a2[4] == "2");
}

TEST_CASE("divers mode sees full concentration on duplicated columns") {
    const TempFile csv("divers.csv", "a,b\n1,1\n-2,-2\n0.5,0.5\n-1,-1\n3,3\n");
    const TempFile conf("divers.conf", "scenario_file = " + csv.path + "\n");
    std::string out;
    const int code =
        cli({"divers", "--config", conf.path, "--measure", "es", "--alpha", "0.6"}, &out);
    REQUIRE(code == 0);
    const auto lines = split_lines(out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[1].find("# diversification_index=1") == 0);
}

TEST_CASE("cdo mode emits a coherent component table") {
    // Four discrete joint loss scenarios; EL-multiple boundary at 2x EL.
    const TempFile csv("cdo.csv", "a,b\n0.00,0.01\n0.02,0.01\n0.05,0.08\n0.01,0.02\n");
    const TempFile conf("cdo.conf", "scenario_file = " + csv.path +
                                        "\ntranche_1 = el_multiple:2.0\n");
    std::string out;
    const int code = cli({"cdo", "--config", conf.path}, &out);
    REQUIRE(code == 0);
    const auto lines = split_lines(out);
    REQUIRE(lines.size() == 7);
    CHECK(lines[2] == "asset,tranche_1,tranche_2,row_sum,asset_el");
    CHECK(split_cells(lines[3])[0] == "a");
    CHECK(split_cells(lines[5])[0] == "column_sum");
    CHECK(split_cells(lines[6])[0] == "tranche_el");
}

TEST_CASE("impact mode reads loss-plus-factor tables") {
    // Perfect factor: the conditional expectation equals the loss itself.
    std::ostringstream csv;
    csv << "loss,perfect\n";
    for (int k = 0; k < 500; ++k) {
        const double l = 0.01 + 0.0001 * (k * 37 % 500);
        csv << l << ',' << l << '\n';
    }
    const TempFile file("impact.csv", csv.str());
    const TempFile conf("impact.conf", "scenario_file = " + file.path + "\n");
    std::string out;
    const int code = cli({"impact", "--config", conf.path, "--alpha", "0.9"}, &out);
    REQUIRE(code == 0);
    const auto lines = split_lines(out);
    REQUIRE(lines.size() == 3);
    const auto cells = split_cells(lines[2]);
    CHECK(cells.size() == 5);
    CHECK(cells[0] == "perfect");
    CHECK(cells[1] == "1");
    CHECK(cells[3] == "1");
    CHECK(cells[4] == "1");

    // The sigma/VaR quasi variants ride behind their flag.
    std::string wide;
    REQUIRE(cli({"impact", "--config", conf.path, "--alpha", "0.9", "--qri-all"},
                &wide) == 0);
    const auto wide_lines = split_lines(wide);
    const auto wide_cells = split_cells(wide_lines[2]);
    REQUIRE(wide_cells.size() == 7);
    CHECK(wide_cells[5] == "1"); // qri_sigma of the perfect factor
    CHECK(wide_cells[6] == "1"); // qri_var of the perfect factor
}

TEST_CASE("CLI exit codes") {
    SUBCASE("malformed CSV exits 2 naming the row") {
        const TempFile csv("bad.csv", "a,b\n1,2\nNaN,3\n");
        const TempFile conf("bad.conf", "scenario_file = " + csv.path + "\n");
        std::string err;
        const int code = cli({"alloc", "--config", conf.path}, nullptr, &err);
        CHECK(code == 2);
        CHECK(err.find("row 3") != std::string::npos);
    }
    SUBCASE("unknown mode exits 2") {
        std::string err;
        CHECK(cli({"frobnicate"}, nullptr, &err) == 2);
    }
    SUBCASE("figure with a scenario file exits 2") {
        const TempFile conf("mix.conf", "scenario_file = /nonexistent\n");
        std::string err;
        CHECK(cli({"figure", "--config", conf.path}, nullptr, &err) == 2);
    }
    SUBCASE("alloc without a scenario file exits 2") {
        std::string err;
        CHECK(cli({"alloc"}, nullptr, &err) == 2);
    }
    SUBCASE("help exits 0") {
        std::string out;
        CHECK(cli({"--help"}, &out) == 0);
        CHECK(out.find("capalloc") != std::string::npos);
    }
    SUBCASE("degenerate computation exits 1") {
        // Constant outcomes: zero marginal sums under ES are a degeneracy,
        // zero-variance sigma reports a flag instead; use var_method linear
        // to force the zero-variance rejection path.
        const TempFile csv("flat.csv", "a\n1\n1\n1\n");
        const TempFile conf("flat.conf", "scenario_file = " + csv.path + "\n");
        std::string err;
        const int code = cli({"alloc", "--config", conf.path, "--measure", "var",
                              "--var-method", "linear"},
                             nullptr, &err);
        CHECK(code == 1);
    }
    SUBCASE("output file is honored") {
        const std::string out_path = "/tmp/capalloc_test_outfile.csv";
        std::remove(out_path.c_str());
        const int code = cli({"figure", "--figure", "rorac", "--scenarios", "2000",
                              "--grid", "0.5:0.5:0.1", "--out", out_path});
        CHECK(code == 0);
        std::ifstream f(out_path);
        REQUIRE(f.good());
        std::string first;
        std::getline(f, first);
        CHECK(first.find("# capalloc") == 0);
        std::remove(out_path.c_str());
    }
}

TEST_CASE("grid construction") {
    RunConfig cfg;
    cfg.grid_start = 0.0;
    cfg.grid_stop = 1.0;
    cfg.grid_step = 0.25;
    CHECK(cfg.grid() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    cfg.grid_step = 0.3;
    CHECK(cfg.grid().size() == 4); // 0, 0.3, 0.6, 0.9
    cfg.grid_step = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_SUITE_END();
