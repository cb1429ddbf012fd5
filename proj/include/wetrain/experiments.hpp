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

#ifndef WETRAIN_EXPERIMENTS_HPP
#define WETRAIN_EXPERIMENTS_HPP

// Configuration-driven experiments. Each writes one CSV: a `#` comment block
// echoing the configuration, a header row, then one row per grid point in
// grid order. Numbers use %.11e (12 significant digits). Energies are in J
// (`_j`), powers in W (`_w`, energy over the block length).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "channel_sim.hpp"
#include "config.hpp"
#include "optimizer.hpp"
#include "order_stats.hpp"
#include "random.hpp"
#include "training_model.hpp"

namespace wetrain
{
    // A numeric failure inside an experiment, with the grid point that raised it
    class experiment_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    namespace detail
    {
        class CsvWriter
        {
        public:
            explicit CsvWriter(std::ostream &os) : os_(os) {}

            CsvWriter &num(double x)
            {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.11e", x);
                return cell(buf);
            }
            CsvWriter &integer(long long x) { return cell(std::to_string(x)); }
            CsvWriter &empty() { return cell(""); }
            CsvWriter &cell(const std::string &s)
            {
                if (!first_)
                    os_ << ',';
                os_ << s;
                first_ = false;
                return *this;
            }
            void end()
            {
                os_ << '\n';
                first_ = true;
            }
            void header(const std::vector<std::string> &cols)
            {
                for (const auto &c : cols)
                    cell(c);
                end();
            }

        private:
            std::ostream &os_;
            bool first_ = true;
        };

        // Independent seed per (grid point, scheme)
        inline std::uint64_t point_seed(std::uint64_t base, std::size_t point, int scheme)
        {
            return mix64(base ^ mix64(0x8CB92BA72F3D8DD7ULL * (point * 16 + static_cast<std::size_t>(scheme) + 1)));
        }

        inline std::string quote_params(const SystemParams &p)
        {
            std::ostringstream os;
            os << "M=" << p.M << " N=" << p.N << " N2=" << p.N2 << " T=" << p.T << " Ps=" << p.Ps << " eta=" << p.eta
               << " beta=" << p.beta << " N0=" << p.N0;
            return os.str();
        }

        // Runs fn, rewrapping any failure with the experiment step and its inputs
        template <class Fn>
        auto guarded(const std::string &step, const SystemParams &p, Fn &&fn)
        {
            try
            {
                return fn();
            }
            catch (const std::exception &e)
            {
                throw experiment_error(step + " [" + quote_params(p) + "]: " + e.what());
            }
        }

        inline void write_preamble(std::ostream &os, const ExperimentConfig &cfg)
        {
            os << "# wetrain " << to_string(cfg.experiment) << '\n';
            // the destination is not part of the result
            ExperimentConfig shown = cfg;
            shown.output_path.clear();
            std::istringstream echo(echo_config(shown));
            for (std::string line; std::getline(echo, line);)
                os << "# " << line << '\n';
        }

        inline const std::vector<std::string> &benchmark_names()
        {
            static const std::vector<std::string> names = {"two_phase",   "perfect_csi", "no_csi",
                                                           "phase1_only", "phase2_only", "brute_force"};
            return names;
        }

        inline void run_gtable(const ExperimentConfig &cfg, std::ostream &os)
        {
            CsvWriter w(os);
            w.header({"n", "n1", "m", "g", "method"});
            for (int M : cfg.gtable_m)
                for (int N1 : cfg.gtable_n1)
                    for (int n : cfg.gtable_ranks)
                    {
                        const OrderStatQuery q{n, N1, M};
                        const GainEntry e = guarded("order_stats.g(n=" + std::to_string(n) + ", N1=" + std::to_string(N1) +
                                                        ", M=" + std::to_string(M) + ")",
                                                    cfg.params, [&] { return shared_gain_table().entry(q); });
                        w.integer(n).integer(N1).integer(M).num(e.value).cell(to_string(e.method));
                        w.end();
                    }
        }

        inline void run_optimize(const ExperimentConfig &cfg, std::ostream &os)
        {
            const SystemParams &p = cfg.params;
            const Solution s = guarded("optimizer.solve_p1", p, [&] { return solve_p1(p); });
            CsvWriter w(os);
            std::vector<std::string> cols = {"n1", "case", "e1_j"};
            for (int n = 1; n <= p.N2; ++n)
                cols.push_back("e2_" + std::to_string(n) + "_j");
            for (const char *c : {"qnet_j", "qnet_w", "optimal"})
                cols.emplace_back(c);
            w.header(cols);
            for (std::size_t i = 0; i < s.value_per_N1.size(); ++i)
            {
                const int N1 = s.case_used_per_N1[i].first;
                const TrainingPlan plan = plan_for(N1, s.e1_per_N1[i], p);
                w.integer(N1).cell(to_string(s.case_used_per_N1[i].second)).num(plan.E1);
                for (double e : plan.E2)
                    w.num(e);
                w.num(s.value_per_N1[i]).num(s.value_per_N1[i] / p.T).integer(N1 == s.plan.N1 ? 1 : 0);
                w.end();
            }
        }

        struct SchemeResult
        {
            std::string name;
            double analytic = 0.0; // NaN when there is no closed form
            EnergyReport sim;
        };

        // Every benchmark at the optimal two-phase design
        inline std::vector<SchemeResult> run_benchmarks(const SystemParams &p, const Solution &s, std::int64_t trials,
                                                        std::uint64_t seed, std::size_t point)
        {
            const PhaseIDesign d1 = optimize_phase1_only(p);
            const std::vector<double> e2 = optimize_phase2_only(p);
            const std::int64_t pilot = std::max<std::int64_t>(trials_per_block, trials / 10);
            const double e_bf = tune_brute_force(p, pilot, point_seed(seed, point, 7));
            const double nan = std::numeric_limits<double>::quiet_NaN();

            const std::vector<std::pair<Scheme, double>> schemes = {
                {TwoPhase{s.plan}, s.qnet_star},
                {PerfectCsi{}, ideal_average(p)},
                {NoCsi{}, p.harvest_scale() * p.beta * p.N2},
                {PhaseIOnly{d1.N1, d1.E1}, d1.value},
                {PhaseIIOnly{e2}, phase2_only_qnet(e2, p)},
                {BruteForce{e_bf}, nan},
            };
            std::vector<SchemeResult> out;
            for (std::size_t k = 0; k < schemes.size(); ++k)
                out.push_back({scheme_name(schemes[k].first), schemes[k].second,
                               run_benchmark(schemes[k].first, p, trials, point_seed(seed, point, static_cast<int>(k)))});
            return out;
        }

        inline void run_simulate(const ExperimentConfig &cfg, std::ostream &os)
        {
            const SystemParams &p = cfg.params;
            const Solution s = guarded("optimizer.solve_p1", p, [&] { return solve_p1(p); });
            const auto results =
                guarded("channel_sim.run_benchmark", p, [&] { return run_benchmarks(p, s, cfg.trials, cfg.seed, 0); });
            CsvWriter w(os);
            w.header({"scheme", "analytic_qnet_j", "sim_qnet_j", "sim_stderr_j", "training_cost_j", "analytic_qnet_w",
                      "sim_qnet_w", "sim_stderr_w", "trials"});
            for (const auto &r : results)
            {
                w.cell(r.name);
                std::isnan(r.analytic) ? w.empty() : w.num(r.analytic);
                w.num(r.sim.mean_qnet).num(r.sim.standard_error).num(r.sim.training_cost);
                std::isnan(r.analytic) ? w.empty() : w.num(r.analytic / p.T);
                w.num(r.sim.mean_qnet / p.T).num(r.sim.standard_error / p.T).integer(r.sim.trials);
                w.end();
            }
        }

        inline void run_sweep_n1(const ExperimentConfig &cfg, std::ostream &os)
        {
            const SystemParams &p = cfg.params;
            CsvWriter w(os);
            w.header({"n1", "case", "e1_star_j", "e2_1_star_j", "qnet_j", "qnet_w", "sim_qnet_j", "sim_stderr_j",
                      "sim_qnet_w", "sim_stderr_w"});
            for (std::size_t i = 0; i < cfg.sweep_grid.size(); ++i)
            {
                const int N1 = static_cast<int>(cfg.sweep_grid[i]);
                const std::string step = "sweep_n1 at N1=" + std::to_string(N1);
                const CaseLabel c = guarded(step, p, [&] { return classify_case(N1, p); });
                const E1Solution e = guarded(step, p, [&] { return solve_for_population(N1, c, p); });
                const TrainingPlan plan = plan_for(N1, e.E1, p);
                const double q = qnet(plan, p);
                const EnergyReport r =
                    guarded(step, p, [&] { return run_two_phase(plan, p, cfg.trials, point_seed(cfg.seed, i, 0)); });
                w.integer(N1).cell(to_string(c)).num(plan.E1).num(plan.E2[0]).num(q).num(q / p.T);
                w.num(r.mean_qnet).num(r.standard_error).num(r.mean_qnet / p.T).num(r.standard_error / p.T);
                w.end();
            }
        }

        inline void run_sweep_T(const ExperimentConfig &cfg, std::ostream &os)
        {
            CsvWriter w(os);
            std::vector<std::string> cols = {"t_s", "esnr", "n1_star", "e1_star_j", "e2_1_star_j", "qnet_j", "qnet_w"};
            for (const auto &name : benchmark_names())
            {
                cols.push_back(name + "_analytic_w");
                cols.push_back(name + "_sim_w");
                cols.push_back(name + "_stderr_w");
            }
            cols.emplace_back("brute_force_e_j");
            w.header(cols);
            for (std::size_t i = 0; i < cfg.sweep_grid.size(); ++i)
            {
                SystemParams p = cfg.params;
                p.T = cfg.sweep_grid[i];
                const std::string step = "sweep_T at T=" + detail::format_number(p.T);
                const Solution s = guarded(step + ": optimizer.solve_p1", p, [&] { return solve_p1(p); });
                const auto res = guarded(step + ": channel_sim", p,
                                         [&] { return run_benchmarks(p, s, cfg.trials, cfg.seed, i); });
                w.num(p.T).num(esnr(p)).integer(s.plan.N1).num(s.plan.E1).num(s.plan.E2[0]).num(s.qnet_star).num(
                    s.qnet_star / p.T);
                for (const auto &r : res)
                {
                    std::isnan(r.analytic) ? w.empty() : w.num(r.analytic / p.T);
                    w.num(r.sim.mean_qnet / p.T).num(r.sim.standard_error / p.T);
                }
                w.num(res.back().sim.training_cost / p.N);
                w.end();
            }
        }

        inline void run_sweep_M(const ExperimentConfig &cfg, std::ostream &os)
        {
            CsvWriter w(os);
            w.header({"m", "n1_star", "e1_star_j", "e2_1_star_j", "e2_limit_j", "qnet_j", "qnet_w", "ideal_w",
                      "large_m_limit_w", "ratio_to_limit", "sim_qnet_w", "sim_stderr_w"});
            for (std::size_t i = 0; i < cfg.sweep_grid.size(); ++i)
            {
                SystemParams p = cfg.params;
                p.M = static_cast<int>(cfg.sweep_grid[i]);
                const std::string step = "sweep_M at M=" + std::to_string(p.M);
                const Solution s = guarded(step + ": optimizer.solve_p1", p, [&] { return solve_p1(p); });
                const LargeMLimit lim = large_m_plan(p);
                const double ideal = guarded(step + ": asymptotics.ideal_average", p, [&] { return ideal_average(p); });
                const EnergyReport r = guarded(step + ": channel_sim", p, [&] {
                    return run_two_phase(s.plan, p, cfg.trials, point_seed(cfg.seed, i, 0));
                });
                w.integer(p.M).integer(s.plan.N1).num(s.plan.E1).num(s.plan.E2[0]).num(lim.plan.E2[0]);
                w.num(s.qnet_star).num(s.qnet_star / p.T).num(ideal / p.T).num(lim.qnet / p.T).num(s.qnet_star / lim.qnet);
                w.num(r.mean_qnet / p.T).num(r.standard_error / p.T);
                w.end();
            }
        }

        inline void run_sweep_N(const ExperimentConfig &cfg, std::ostream &os)
        {
            CsvWriter w(os);
            w.header({"n", "n1_star", "e1_star_j", "qnet_j", "qnet_w", "ideal_w", "bound_w", "lambert_w", "branch",
                      "sim_qnet_w", "sim_stderr_w"});
            for (std::size_t i = 0; i < cfg.sweep_grid.size(); ++i)
            {
                SystemParams p = cfg.params;
                p.N = static_cast<int>(cfg.sweep_grid[i]);
                const std::string step = "sweep_N_siso at N=" + std::to_string(p.N);
                const Solution s = guarded(step + ": optimizer.solve_p1", p, [&] { return solve_p1(p); });
                const double ideal = guarded(step + ": asymptotics.ideal_average", p, [&] { return ideal_average(p); });
                const BoundReport b = large_n_upper_bound(p);
                const EnergyReport r = guarded(step + ": channel_sim", p, [&] {
                    return run_two_phase(s.plan, p, cfg.trials, point_seed(cfg.seed, i, 0));
                });
                w.integer(p.N).integer(s.plan.N1).num(s.plan.E1).num(s.qnet_star).num(s.qnet_star / p.T);
                w.num(ideal / p.T).num(b.bound / p.T).num(b.lambert_form / p.T).cell(b.branch());
                w.num(r.mean_qnet / p.T).num(r.standard_error / p.T);
                w.end();
            }
        }

        inline void run_bound(const ExperimentConfig &cfg, std::ostream &os)
        {
            const SystemParams &p = cfg.params;
            const BoundReport b = guarded("asymptotics.large_n_upper_bound", p, [&] { return large_n_upper_bound(p); });
            const BoundReport m = large_m_bound(p);
            const double ideal = guarded("asymptotics.ideal_average", p, [&] { return ideal_average(p); });
            CsvWriter w(os);
            w.header({"regime", "esnr", "branch", "best_n1", "best_e1_j", "bound_j", "bound_w", "lambert_j", "lambert_w",
                      "lambert_n1", "ideal_w"});
            w.cell(to_string(b.regime)).num(esnr(p)).cell(b.branch()).integer(b.best_N1).num(b.best_E1);
            w.num(b.bound).num(b.bound / p.T).num(b.lambert_form).num(b.lambert_form / p.T).num(b.lambert_N1).num(ideal / p.T);
            w.end();
            w.cell(to_string(m.regime)).num(esnr(p)).empty().integer(m.best_N1).num(0.0);
            w.num(m.bound).num(m.bound / p.T).empty().empty().empty().num(ideal / p.T);
            w.end();
        }
    }

    // Writes the experiment's CSV to `os`. Throws experiment_error on numeric failure.
    inline void write_experiment(const ExperimentConfig &cfg, std::ostream &os)
    {
        validate_config(cfg);
        std::ostringstream body;
        detail::write_preamble(body, cfg);
        switch (cfg.experiment)
        {
        case Experiment::gtable:
            detail::run_gtable(cfg, body);
            break;
        case Experiment::optimize:
            detail::run_optimize(cfg, body);
            break;
        case Experiment::simulate:
            detail::run_simulate(cfg, body);
            break;
        case Experiment::sweep_n1:
            detail::run_sweep_n1(cfg, body);
            break;
        case Experiment::sweep_T:
            detail::run_sweep_T(cfg, body);
            break;
        case Experiment::sweep_M:
            detail::run_sweep_M(cfg, body);
            break;
        case Experiment::sweep_N_siso:
            detail::run_sweep_N(cfg, body);
            break;
        case Experiment::bound:
            detail::run_bound(cfg, body);
            break;
        }
        os << body.str();
    }

    // G_n table for the configured grids
    inline void emit_gtable(const ExperimentConfig &cfg, std::ostream &os)
    {
        ExperimentConfig c = cfg;
        c.experiment = Experiment::gtable;
        write_experiment(c, os);
    }

    enum ExitCode
    {
        exit_ok = 0,
        exit_numeric = 1,
        exit_io = 2,
    };

    // Runs the experiment and writes output_path (standard output when empty or
    // "-"). Returns 0 on success, 1 on numeric failure, 2 on I/O or configuration
    // failure; diagnostics go to `err`.
    inline int run_experiment(const ExperimentConfig &cfg, std::ostream &err = std::cerr)
    {
        std::ostringstream csv;
        try
        {
            write_experiment(cfg, csv);
        }
        catch (const config_error &e)
        {
            err << "wetrain: config: " << e.what() << '\n';
            return exit_io;
        }
        catch (const std::exception &e)
        {
            err << "wetrain: " << to_string(cfg.experiment) << ": " << e.what() << '\n';
            return exit_numeric;
        }

        if (cfg.output_path.empty() || cfg.output_path == "-")
        {
            std::cout << csv.str() << std::flush;
            return std::cout ? exit_ok : exit_io;
        }
        std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            err << "wetrain: cannot open '" << cfg.output_path << "' for writing\n";
            return exit_io;
        }
        out << csv.str();
        out.close();
        if (!out)
        {
            err << "wetrain: failed writing '" << cfg.output_path << "'\n";
            return exit_io;
        }
        return exit_ok;
    }
}

#endif
