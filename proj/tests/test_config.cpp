// SPDX-License-Identifier: Apache-2.0
//
// wetrain: training design for multi-antenna multi-band wireless energy transfer
// Copyright (C) 2026 The wetrain authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <wetrain/wetrain.hpp>

using namespace wetrain;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const std::filesystem::path configs = std::filesystem::path(WETRAIN_SOURCE_DIR) / "configs";

    std::string expect_error(const std::string &text)
    {
        try
        {
            parse_config_text(text, "t.cfg");
        }
        catch (const config_error &e)
        {
            return e.what();
        }
        FAIL("no config_error for:\n" << text);
        return {};
    }

    const std::string minimal = "experiment = optimize\nm = 4\nn = 32\nt_s = 1e-3\n";

    std::vector<std::vector<std::string>> csv_rows(const std::string &csv)
    {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(csv);
        for (std::string line; std::getline(in, line);)
        {
            if (line.empty() || line[0] == '#')
                continue;
            std::vector<std::string> cells;
            std::istringstream ls(line);
            for (std::string c; std::getline(ls, c, ',');)
                cells.push_back(c);
            rows.push_back(cells);
        }
        return rows;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    int run_cli(const std::string &args)
    {
        const char *cli = std::getenv("WETRAIN_CLI");
        REQUIRE(cli != nullptr);
        const int status = std::system((std::string(cli) + " " + args + " 2>/dev/null").c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
}

TEST_CASE("reference deployment file", "[config]")
{
    const ExperimentConfig cfg = parse_config((configs / "reference.cfg").string());
    CHECK(cfg.experiment == Experiment::optimize);
    CHECK(cfg.params == ism_reference_params(10, 5e-5));
    CHECK(cfg.params.N2 == 16);
    CHECK(cfg.trials == 10000);
    CHECK(cfg.seed == 1);
}

TEST_CASE("every shipped config round-trips through the canonical echo", "[config]")
{
    int count = 0;
    for (const auto &entry : std::filesystem::directory_iterator(configs))
    {
        if (entry.path().extension() != ".cfg")
            continue;
        ++count;
        INFO(entry.path());
        const ExperimentConfig cfg = parse_config(entry.path().string());
        const std::string echo = echo_config(cfg);
        CHECK(parse_config_text(echo) == cfg);
        CHECK(echo_config(parse_config_text(echo)) == echo);
    }
    CHECK(count >= 8);
}

TEST_CASE("unit conversions at parse time", "[config]")
{
    const auto c = parse_config_text(minimal + "beta_db = -60\nps_dbm = 30\nn0_dbm_per_hz = -160\nnoise_bandwidth_hz = 30000\n");
    CHECK_THAT(c.params.beta, WithinRel(1e-6, 1e-15));
    CHECK_THAT(c.params.Ps, WithinRel(1.0, 1e-15));
    CHECK_THAT(c.params.N0, WithinRel(3e-15, 1e-14));

    const auto d = parse_config_text(minimal);
    CHECK(d.params.beta == db_to_linear(-60.0));
    CHECK(d.params.N0 == dbm_to_watts(-160.0));
    CHECK(d.params.Ps == 0.06);
    CHECK(d.params.eta == 0.8);
    CHECK(d.params.N2 == 16);

    CHECK(parse_config_text(minimal + "pt_w = 1\nps_w = 0.06\n").params.N2 == 16);
    CHECK(parse_config_text(minimal + "pt_w = 0.5\nps_w = 0.1\n").params.N2 == 5);
}

TEST_CASE("configuration errors", "[config]")
{
    CHECK_THAT(expect_error("m = 4\nn = 32\nt_s = 1e-3\n"), ContainsSubstring("experiment"));
    CHECK_THAT(expect_error("experiment = optimize\nn = 32\nt_s = 1e-3\n"), ContainsSubstring("'m'"));
    CHECK_THAT(expect_error(minimal + "colour = blue\n"), ContainsSubstring("t.cfg:5") && ContainsSubstring("colour"));
    CHECK_THAT(expect_error(minimal + "beta = 1e-6\nbeta_db = -60\n"), ContainsSubstring("t.cfg:6") && ContainsSubstring("beta_db"));
    CHECK_THAT(expect_error(minimal + "ps_w = 0.06\nps_dbm = 17\n"), ContainsSubstring("ps_dbm"));
    CHECK_THAT(expect_error(minimal + "n0_j = 1e-19\nn0_dbm_per_hz = -160\n"), ContainsSubstring("n0_j"));
    CHECK_THAT(expect_error(minimal + "n2 = 4\npt_w = 1\n"), ContainsSubstring("pt_w"));
    CHECK_THAT(expect_error(minimal + "m = 5\n"), ContainsSubstring("t.cfg:5") && ContainsSubstring("repeats line 2"));
    CHECK_THAT(expect_error("# comment\n\nexperiment = optimize\nm = four\nn = 8\nt_s = 1\n"), ContainsSubstring("t.cfg:4"));
    CHECK_THAT(expect_error(minimal + "just words\n"), ContainsSubstring("t.cfg:5"));
    CHECK_THAT(expect_error(minimal + "eta =\n"), ContainsSubstring("empty value"));
    CHECK_THAT(expect_error("experiment = dance\nm = 4\nn = 32\nt_s = 1e-3\n"), ContainsSubstring("dance"));
    CHECK_THAT(expect_error(minimal + "trials = 0\n"), ContainsSubstring("trials"));
    CHECK_THAT(expect_error(minimal + "n2 = 40\n"), ContainsSubstring("N2"));
    CHECK_THAT(expect_error(minimal + "t_s = 2\n"), ContainsSubstring("repeats"));
    CHECK_THAT(expect_error(minimal + "eta = inf\n"), ContainsSubstring("eta"));

    const std::string sweep = "experiment = sweep_n1\nm = 4\nn = 32\nt_s = 1e-3\nn2 = 2\n";
    CHECK_THAT(expect_error(sweep), ContainsSubstring("sweep_grid"));
    CHECK_THAT(expect_error(sweep + "sweep_grid = 4,3\n"), ContainsSubstring("ascending"));
    CHECK_THAT(expect_error(sweep + "sweep_grid = 2,2\n"), ContainsSubstring("ascending"));
    CHECK_THAT(expect_error(sweep + "sweep_grid = 2,2.5\n"), ContainsSubstring("integer"));
    CHECK_THAT(expect_error(sweep + "sweep_grid = 1,4\n"), ContainsSubstring("[n2, n]"));
    CHECK_THAT(expect_error(sweep + "sweep_grid = 4,40\n"), ContainsSubstring("[n2, n]"));
    CHECK_NOTHROW(parse_config_text(sweep + "sweep_grid = 2, 4 ,32\n"));

    const std::string gt = "experiment = gtable\nm = 1\nn = 866\nt_s = 1\n";
    CHECK_THAT(expect_error(gt + "gtable_m = 1\n"), ContainsSubstring("gtable"));
    CHECK_THAT(expect_error(gt + "gtable_n1 = 2,5\ngtable_m = 1\n"), ContainsSubstring("gtable_ranks"));

    CHECK_THROWS_AS(parse_config("/nonexistent/none.cfg"), io_error);
}

TEST_CASE("gtable output", "[config][cli]")
{
    ExperimentConfig cfg = parse_config_text("experiment = gtable\nm = 1\nn = 866\nt_s = 1\n"
                                             "gtable_ranks = 1,2,3\ngtable_n1 = 3,5,10,20,40,80\ngtable_m = 1,2\n");
    std::ostringstream os;
    write_experiment(cfg, os);
    const auto rows = csv_rows(os.str());
    REQUIRE(rows.size() == 1 + 3 * 6 * 2);
    CHECK(rows[0] == std::vector<std::string>{"n", "n1", "m", "g", "method"});
    CHECK(rows[1] == std::vector<std::string>{"1", "3", "1", "1.83333333333e+00", "closed_form"});

    // monotone and concave in N1 at M = 2, rank by rank
    for (int n = 1; n <= 3; ++n)
    {
        std::vector<std::pair<double, double>> pts;
        for (const auto &r : rows)
            if (r[0] == std::to_string(n) && r[2] == "2")
                pts.emplace_back(std::stod(r[1]), std::stod(r[3]));
        REQUIRE(pts.size() == 6);
        for (std::size_t i = 1; i < pts.size(); ++i)
            CHECK(pts[i].second > pts[i - 1].second);
        for (std::size_t i = 2; i < pts.size(); ++i)
        {
            const double s1 = (pts[i - 1].second - pts[i - 2].second) / (pts[i - 1].first - pts[i - 2].first);
            const double s2 = (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
            CHECK(s2 < s1);
        }
    }

    // near-linear in M at N1 = 10: slope between 1 and 1 + 3/sqrt(M)
    ExperimentConfig m = cfg;
    m.gtable_n1 = {10};
    m.gtable_m = {4, 8, 16, 32, 64};
    std::ostringstream ms;
    emit_gtable(m, ms);
    const auto mr = csv_rows(ms.str());
    for (int n = 1; n <= 3; ++n)
    {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 1; i < mr.size(); ++i)
            if (mr[i][0] == std::to_string(n))
                pts.emplace_back(std::stod(mr[i][2]), std::stod(mr[i][3]));
        for (std::size_t i = 1; i < pts.size(); ++i)
        {
            const double slope = (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
            CHECK(slope > 1.0);
            CHECK(slope < 1.0 + 3.0 / std::sqrt(pts[i - 1].first));
        }
    }
}

TEST_CASE("sweep_n1: analytic and simulated columns agree", "[config][cli]")
{
    ExperimentConfig cfg = parse_config((configs / "sweep_n1_m10.cfg").string());
    cfg.sweep_grid = {16, 40, 120};
    cfg.trials = 4096;
    std::ostringstream os;
    write_experiment(cfg, os);
    const auto rows = csv_rows(os.str());
    REQUIRE(rows.size() == 4);
    const auto &h = rows[0];
    auto col = [&](const char *name) { return static_cast<std::size_t>(std::find(h.begin(), h.end(), name) - h.begin()); };
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const double q = std::stod(rows[i][col("qnet_w")]);
        const double s = std::stod(rows[i][col("sim_qnet_w")]);
        const double se = std::stod(rows[i][col("sim_stderr_w")]);
        INFO("N1 = " << rows[i][0]);
        CHECK(std::abs(q - s) <= 3.0 * se);
        CHECK(std::stod(rows[i][col("qnet_j")]) / cfg.params.T == Catch::Approx(q).epsilon(1e-10));
    }
}

TEST_CASE("experiments are byte-reproducible and thread-count independent", "[config][cli]")
{
    ExperimentConfig cfg = parse_config((configs / "sweep_N_siso.cfg").string());
    cfg.sweep_grid = {20, 100};
    cfg.trials = 2048;
    std::ostringstream a, b, c;
    write_experiment(cfg, a);
    write_experiment(cfg, b);
    ::setenv("WETRAIN_THREADS", "3", 1);
    write_experiment(cfg, c);
    ::unsetenv("WETRAIN_THREADS");
    CHECK(a.str() == b.str());
    CHECK(a.str() == c.str());
    CHECK_THAT(a.str(), ContainsSubstring("# seed = 4\n"));
    CHECK_THAT(a.str(), ContainsSubstring("# experiment = sweep_N_siso\n"));

    ExperimentConfig other = cfg;
    other.seed = 5;
    std::ostringstream d;
    write_experiment(other, d);
    CHECK(a.str() != d.str());
}

TEST_CASE("bound and simulate outputs", "[config][cli]")
{
    ExperimentConfig cfg = parse_config((configs / "bound.cfg").string());
    std::ostringstream os;
    write_experiment(cfg, os);
    const auto rows = csv_rows(os.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "large_N");
    CHECK(rows[1][2] == "nontrivial");
    CHECK(rows[2][0] == "large_M");

    ExperimentConfig sim = parse_config_text("experiment = simulate\nm = 4\nn = 24\nn2 = 2\nt_s = 1e-3\ntrials = 2048\n");
    std::ostringstream ss;
    write_experiment(sim, ss);
    const auto sr = csv_rows(ss.str());
    REQUIRE(sr.size() == 7);
    CHECK(sr[1][0] == "two_phase");
    CHECK(sr[6][0] == "brute_force");
    CHECK(sr[6][1].empty());
    // no-CSI analytic value is exactly eta T Ps beta N2
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", sim.params.harvest_scale() * sim.params.beta * 2);
    CHECK(sr[3][1] == buf);
}

TEST_CASE("failures name the step and its inputs", "[config]")
{
    const SystemParams p = ism_reference_params(3, 1e-3);
    try
    {
        detail::guarded("optimizer.solve_p1", p, []() -> int { throw std::domain_error("boom"); });
        FAIL("no throw");
    }
    catch (const experiment_error &e)
    {
        CHECK_THAT(e.what(), ContainsSubstring("optimizer.solve_p1") && ContainsSubstring("M=3") && ContainsSubstring("boom"));
    }

    ExperimentConfig cfg = parse_config_text(minimal);
    cfg.experiment = Experiment::bound;
    cfg.output_path = "/nonexistent-dir/out.csv";
    std::ostringstream err;
    CHECK(run_experiment(cfg, err) == exit_io);
    CHECK_THAT(err.str(), ContainsSubstring("/nonexistent-dir/out.csv"));

    cfg.params.N2 = 0; // invalid after parsing
    CHECK(run_experiment(cfg, err) == exit_io);
}

TEST_CASE("command line", "[cli]")
{
    const auto tmp = std::filesystem::temp_directory_path() / "wetrain_test_config";
    std::filesystem::create_directories(tmp);
    const std::string ref = (configs / "reference.cfg").string();

    CHECK(run_cli("echo-config --config " + ref + " > " + (tmp / "echo.cfg").string()) == 0);
    CHECK(slurp(tmp / "echo.cfg") == echo_config(parse_config(ref)));

    const std::string gt = (configs / "gtable_vs_n1.cfg").string();
    CHECK(run_cli("gtable --config " + gt + " --out " + (tmp / "a.csv").string()) == 0);
    CHECK(run_cli("gtable --config " + gt + " --out " + (tmp / "b.csv").string()) == 0);
    CHECK(slurp(tmp / "a.csv") == slurp(tmp / "b.csv"));
    CHECK_FALSE(slurp(tmp / "a.csv").empty());

    CHECK(run_cli("bound --config " + ref + " --seed 9 --out " + (tmp / "c.csv").string()) == 0);
    CHECK_THAT(slurp(tmp / "c.csv"), ContainsSubstring("# seed = 9\n"));

    CHECK(run_cli("sweep --config " + ref) == 2);
    CHECK(run_cli("bound --config " + ref + " --out /nonexistent-dir/x.csv") == 2);
    CHECK(run_cli("optimize --config /nonexistent/none.cfg") != 0);
    std::filesystem::remove_all(tmp);
}
