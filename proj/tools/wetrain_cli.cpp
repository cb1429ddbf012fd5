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

// wetrain command line: runs configured experiments and writes CSV.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <wetrain/wetrain.hpp>

namespace
{
    struct Overrides
    {
        std::string config;
        std::uint64_t seed = 0;
        std::int64_t trials = 0;
        std::string out;
    };

    void add_common(CLI::App *cmd, Overrides &o, bool runs)
    {
        cmd->add_option("--config", o.config, "configuration file")->required()->check(CLI::ExistingFile);
        if (!runs)
            return;
        cmd->add_option("--seed", o.seed, "override the configured seed");
        cmd->add_option("--trials", o.trials, "override the configured trial count")->check(CLI::PositiveNumber);
        cmd->add_option("--out", o.out, "override output_path ('-' for standard output)");
    }

    int load(const Overrides &o, wetrain::ExperimentConfig &cfg, const CLI::App &cmd)
    {
        try
        {
            cfg = wetrain::parse_config(o.config);
        }
        catch (const std::exception &e)
        {
            std::cerr << "wetrain: " << e.what() << '\n';
            return wetrain::exit_io;
        }
        auto given = [&](const char *flag) { const auto *opt = cmd.get_option_no_throw(flag); return opt && opt->count() > 0; };
        if (given("--seed"))
            cfg.seed = o.seed;
        if (given("--trials"))
            cfg.trials = o.trials;
        if (given("--out"))
            cfg.output_path = o.out;
        return wetrain::exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Training design for multi-antenna multi-band wireless energy transfer"};
    app.footer(std::string(wetrain::config_key_help));
    app.require_subcommand(1);

    Overrides o;
    struct Command
    {
        const char *name;
        const char *help;
        bool runs;
    };
    const Command commands[] = {
        {"gtable", "tabulate G_n(N1, M) over the configured grids", true},
        {"optimize", "solve the training design; one row per N1", true},
        {"simulate", "optimal design and all benchmarks, analytic and Monte Carlo", true},
        {"sweep", "run the configured sweep_* experiment", true},
        {"bound", "large-N and large-M limits", true},
        {"echo-config", "print the configuration in canonical form", false},
    };
    for (const auto &c : commands)
        add_common(app.add_subcommand(c.name, c.help), o, c.runs);

    CLI11_PARSE(app, argc, argv);

    const CLI::App *cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    wetrain::ExperimentConfig cfg;
    if (int rc = load(o, cfg, *cmd); rc != wetrain::exit_ok)
        return rc;

    if (name == "echo-config")
    {
        std::cout << wetrain::echo_config(cfg);
        return std::cout ? wetrain::exit_ok : wetrain::exit_io;
    }
    if (name == "sweep")
    {
        if (!wetrain::is_sweep(cfg.experiment))
        {
            std::cerr << "wetrain: sweep: config names experiment '" << wetrain::to_string(cfg.experiment)
                      << "', expected one of sweep_n1, sweep_T, sweep_M, sweep_N_siso\n";
            return wetrain::exit_io;
        }
    }
    else
        cfg.experiment = *wetrain::experiment_from_string(name);
    return wetrain::run_experiment(cfg);
}
