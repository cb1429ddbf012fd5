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

#ifndef WETRAIN_CONFIG_HPP
#define WETRAIN_CONFIG_HPP

// Experiment configuration: a flat text file of `key = value` lines.
// `#` starts a comment; blank lines are ignored; every key at most once.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "system_params.hpp"

namespace wetrain
{
    enum class Experiment
    {
        gtable,
        optimize,
        simulate,
        sweep_n1,
        sweep_T,
        sweep_M,
        sweep_N_siso,
        bound,
    };

    inline constexpr std::string_view experiment_names[] = {"gtable",  "optimize", "simulate",     "sweep_n1",
                                                             "sweep_T", "sweep_M",  "sweep_N_siso", "bound"};

    inline std::string_view to_string(Experiment e) { return experiment_names[static_cast<int>(e)]; }

    inline std::optional<Experiment> experiment_from_string(std::string_view s)
    {
        for (std::size_t i = 0; i < std::size(experiment_names); ++i)
            if (experiment_names[i] == s)
                return static_cast<Experiment>(i);
        return std::nullopt;
    }

    inline bool is_sweep(Experiment e)
    {
        return e == Experiment::sweep_n1 || e == Experiment::sweep_T || e == Experiment::sweep_M ||
               e == Experiment::sweep_N_siso;
    }

    struct ExperimentConfig
    {
        Experiment experiment = Experiment::optimize;
        SystemParams params;
        std::vector<double> sweep_grid;
        std::int64_t trials = 10000;
        std::uint64_t seed = 1;
        std::string output_path; // empty: standard output

        // gtable only
        std::vector<int> gtable_ranks{1, 2, 3};
        std::vector<int> gtable_n1;
        std::vector<int> gtable_m;

        bool operator==(const ExperimentConfig &) const = default;
    };

    // Malformed configuration. line() is 0 when the problem is not tied to one line.
    class config_error : public std::runtime_error
    {
    public:
        config_error(const std::string &what, int line = 0) : std::runtime_error(what), line_(line) {}
        int line() const noexcept { return line_; }

    private:
        int line_;
    };

    // Unreadable or unwritable file
    class io_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Key reference, printed by `wetrain --help`
    inline constexpr std::string_view config_key_help = R"(Configuration keys (key = value, one per line, # comments):
  experiment          required; gtable | optimize | simulate | sweep_n1 | sweep_T | sweep_M | sweep_N_siso | bound
  m                   required; transmit antennas
  n                   required; available sub-bands
  t_s                 required; block length [s]
  n2                  bands used for transfer (default 16); or
  pt_w                total power cap [W], n2 = floor(pt_w / ps_w)
  ps_w | ps_dbm       per-band power (default 0.06 W)
  eta                 conversion efficiency (default 0.8)
  beta | beta_db      path gain (default 1e-6, i.e. -60 dB)
  n0_j                noise energy per pilot observation [J]; or
  n0_dbm_per_hz       noise density (default -160), times
  noise_bandwidth_hz  observation bandwidth (default 1 Hz)
  trials              Monte Carlo trials (default 10000)
  seed                base seed, unsigned 64-bit (default 1)
  output_path         CSV destination (default: standard output)
  sweep_grid          comma-separated ascending values (sweep_* experiments)
  gtable_ranks        comma-separated ranks n (default 1,2,3)
  gtable_n1           comma-separated populations N1
  gtable_m            comma-separated dimensions M
)";

    namespace detail
    {
        inline std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        inline double parse_double(std::string_view key, std::string_view v, int line)
        {
            double x = 0.0;
            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
                throw config_error(std::string(key) + ": not a finite number: '" + std::string(v) + "'", line);
            return x;
        }

        template <class Int>
        Int parse_integer(std::string_view key, std::string_view v, int line)
        {
            Int x{};
            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc() || ptr != v.data() + v.size())
                throw config_error(std::string(key) + ": not an integer: '" + std::string(v) + "'", line);
            return x;
        }

        inline std::vector<double> parse_list(std::string_view key, std::string_view v, int line)
        {
            std::vector<double> out;
            while (true)
            {
                const auto comma = v.find(',');
                const auto item = trim(v.substr(0, comma));
                out.push_back(parse_double(key, item, line));
                if (comma == std::string_view::npos)
                    break;
                v.remove_prefix(comma + 1);
            }
            return out;
        }

        inline std::vector<int> parse_int_list(std::string_view key, std::string_view v, int line)
        {
            std::vector<int> out;
            while (true)
            {
                const auto comma = v.find(',');
                out.push_back(parse_integer<int>(key, trim(v.substr(0, comma)), line));
                if (comma == std::string_view::npos)
                    break;
                v.remove_prefix(comma + 1);
            }
            return out;
        }

        inline std::string format_number(double x)
        {
            // shortest representation that parses back to x
            char buf[40];
            const auto r = std::to_chars(buf, buf + sizeof(buf), x);
            return std::string(buf, r.ptr);
        }

        template <class T>
        std::string join(const std::vector<T> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                if (i)
                    s += ',';
                if constexpr (std::is_floating_point_v<T>)
                    s += format_number(v[i]);
                else
                    s += std::to_string(v[i]);
            }
            return s;
        }

        inline bool integral(double x) { return x == std::floor(x) && std::abs(x) < 2e9; }
    }

    // Cross-key checks that do not depend on line positions
    inline void validate_config(const ExperimentConfig &cfg)
    {
        try
        {
            cfg.params.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }
        if (cfg.trials < 1)
            throw config_error("trials must be >= 1");

        if (is_sweep(cfg.experiment))
        {
            const auto &g = cfg.sweep_grid;
            if (g.empty())
                throw config_error("sweep_grid is required for " + std::string(to_string(cfg.experiment)));
            if (!std::is_sorted(g.begin(), g.end()) || std::adjacent_find(g.begin(), g.end()) != g.end())
                throw config_error("sweep_grid must be strictly ascending");
            const bool integer_grid = cfg.experiment != Experiment::sweep_T;
            for (double x : g)
            {
                if (integer_grid && !detail::integral(x))
                    throw config_error("sweep_grid: " + detail::format_number(x) + " is not an integer");
                switch (cfg.experiment)
                {
                case Experiment::sweep_n1:
                    if (x < cfg.params.N2 || x > cfg.params.N)
                        throw config_error("sweep_grid: N1 values must lie in [n2, n]");
                    break;
                case Experiment::sweep_T:
                    if (!(x > 0.0))
                        throw config_error("sweep_grid: block lengths must be positive");
                    break;
                case Experiment::sweep_M:
                    if (x < 1)
                        throw config_error("sweep_grid: antenna counts must be >= 1");
                    break;
                case Experiment::sweep_N_siso:
                    if (x < cfg.params.N2)
                        throw config_error("sweep_grid: band counts must be >= n2");
                    break;
                default:
                    break;
                }
            }
        }
        if (cfg.experiment == Experiment::gtable)
        {
            if (cfg.gtable_ranks.empty() || cfg.gtable_n1.empty() || cfg.gtable_m.empty())
                throw config_error("gtable needs gtable_ranks, gtable_n1 and gtable_m");
            const int min_n1 = *std::min_element(cfg.gtable_n1.begin(), cfg.gtable_n1.end());
            for (int r : cfg.gtable_ranks)
                if (r < 1 || r > min_n1)
                    throw config_error("gtable_ranks must lie in [1, min(gtable_n1)]");
            for (int m : cfg.gtable_m)
                if (m < 1)
                    throw config_error("gtable_m entries must be >= 1");
        }
    }

    // Parses configuration text. `origin` names the source in messages.
    inline ExperimentConfig parse_config_text(std::string_view text, std::string_view origin = "<config>")
    {
        const std::string where(origin);
        std::map<std::string, std::pair<std::string, int>, std::less<>> kv; // key -> (value, line)

        int line_no = 0;
        while (!text.empty())
        {
            ++line_no;
            const auto nl = text.find('\n');
            std::string_view line = text.substr(0, nl);
            text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw config_error(where + ":" + std::to_string(line_no) + ": expected key = value", line_no);
            const std::string key(detail::trim(line.substr(0, eq)));
            const std::string value(detail::trim(line.substr(eq + 1)));
            if (key.empty())
                throw config_error(where + ":" + std::to_string(line_no) + ": empty key", line_no);
            if (value.empty())
                throw config_error(where + ":" + std::to_string(line_no) + ": " + key + ": empty value", line_no);
            if (auto [it, fresh] = kv.emplace(key, std::make_pair(value, line_no)); !fresh)
                throw config_error(where + ":" + std::to_string(line_no) + ": " + key + " repeats line " +
                                       std::to_string(it->second.second),
                                   line_no);
        }

        static const std::vector<std::string_view> known = {
            "experiment", "m",          "n",          "t_s",        "n2",         "pt_w",
            "ps_w",       "ps_dbm",     "eta",        "beta",       "beta_db",    "n0_j",
            "n0_dbm_per_hz", "noise_bandwidth_hz", "trials", "seed", "output_path", "sweep_grid",
            "gtable_ranks",  "gtable_n1",          "gtable_m"};
        for (const auto &[key, v] : kv)
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw config_error(where + ":" + std::to_string(v.second) + ": unknown key '" + key + "'", v.second);

        for (const char *req : {"experiment", "m", "n", "t_s"})
            if (!kv.contains(req))
                throw config_error(where + ": missing required key '" + std::string(req) + "'");

        auto conflict = [&](const char *a, const char *b)
        {
            if (kv.contains(a) && kv.contains(b))
            {
                const int line = std::max(kv.find(a)->second.second, kv.find(b)->second.second);
                throw config_error(where + ":" + std::to_string(line) + ": " + a + " and " + b +
                                       " give the same quantity; keep one",
                                   line);
            }
        };
        conflict("ps_w", "ps_dbm");
        conflict("beta", "beta_db");
        conflict("n0_j", "n0_dbm_per_hz");
        conflict("n0_j", "noise_bandwidth_hz");
        conflict("n2", "pt_w");

        auto num = [&](const char *key) { const auto &v = kv.find(key)->second; return detail::parse_double(key, v.first, v.second); };
        auto integer = [&](const char *key) { const auto &v = kv.find(key)->second; return detail::parse_integer<int>(key, v.first, v.second); };

        ExperimentConfig cfg;
        try
        {
            {
                const auto &[v, line] = kv.find("experiment")->second;
                const auto e = experiment_from_string(v);
                if (!e)
                    throw config_error("unknown experiment '" + v + "'", line);
                cfg.experiment = *e;
            }

            SystemParams &p = cfg.params;
            p.M = integer("m");
            p.N = integer("n");
            p.T = num("t_s");
            p.Ps = kv.contains("ps_w") ? num("ps_w") : kv.contains("ps_dbm") ? dbm_to_watts(num("ps_dbm")) : 0.06;
            p.eta = kv.contains("eta") ? num("eta") : 0.8;
            p.beta = kv.contains("beta") ? num("beta") : db_to_linear(kv.contains("beta_db") ? num("beta_db") : -60.0);
            if (kv.contains("n0_j"))
                p.N0 = num("n0_j");
            else
                p.N0 = dbm_to_watts(kv.contains("n0_dbm_per_hz") ? num("n0_dbm_per_hz") : -160.0) *
                       (kv.contains("noise_bandwidth_hz") ? num("noise_bandwidth_hz") : 1.0);
            if (kv.contains("pt_w"))
            {
                const double ratio = num("pt_w") / p.Ps;
                // tolerate ratios such as 1 / 0.06 landing just below an integer
                p.N2 = static_cast<int>(std::floor(ratio * (1.0 + 1e-12)));
            }
            else
                p.N2 = kv.contains("n2") ? integer("n2") : 16;

            if (kv.contains("trials"))
            {
                const auto &[v, line] = kv.find("trials")->second;
                cfg.trials = detail::parse_integer<std::int64_t>("trials", v, line);
            }
            if (kv.contains("seed"))
            {
                const auto &[v, line] = kv.find("seed")->second;
                cfg.seed = detail::parse_integer<std::uint64_t>("seed", v, line);
            }
            if (kv.contains("output_path"))
                cfg.output_path = kv.find("output_path")->second.first;
            if (kv.contains("sweep_grid"))
            {
                const auto &[v, line] = kv.find("sweep_grid")->second;
                cfg.sweep_grid = detail::parse_list("sweep_grid", v, line);
            }
            for (auto [key, dest] : {std::pair{"gtable_ranks", &cfg.gtable_ranks}, std::pair{"gtable_n1", &cfg.gtable_n1},
                                     std::pair{"gtable_m", &cfg.gtable_m}})
                if (kv.contains(key))
                {
                    const auto &[v, line] = kv.find(key)->second;
                    *dest = detail::parse_int_list(key, v, line);
                }
        }
        catch (const config_error &e)
        {
            if (e.line() == 0)
                throw;
            throw config_error(where + ":" + std::to_string(e.line()) + ": " + e.what(), e.line());
        }

        try
        {
            validate_config(cfg);
        }
        catch (const config_error &e)
        {
            throw config_error(where + ": " + e.what());
        }
        return cfg;
    }

    inline ExperimentConfig parse_config(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw io_error("cannot open config file '" + path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        if (in.bad())
            throw io_error("cannot read config file '" + path + "'");
        return parse_config_text(text.str(), path);
    }

    // Canonical form: linear units, fixed key order, round-trip precision.
    // parse_config_text(echo_config(c)) == c.
    inline std::string echo_config(const ExperimentConfig &cfg)
    {
        using detail::format_number;
        const SystemParams &p = cfg.params;
        std::ostringstream os;
        os << "experiment = " << to_string(cfg.experiment) << '\n'
           << "m = " << p.M << '\n'
           << "n = " << p.N << '\n'
           << "n2 = " << p.N2 << '\n'
           << "t_s = " << format_number(p.T) << '\n'
           << "ps_w = " << format_number(p.Ps) << '\n'
           << "eta = " << format_number(p.eta) << '\n'
           << "beta = " << format_number(p.beta) << '\n'
           << "n0_j = " << format_number(p.N0) << '\n'
           << "trials = " << cfg.trials << '\n'
           << "seed = " << cfg.seed << '\n';
        if (!cfg.output_path.empty())
            os << "output_path = " << cfg.output_path << '\n';
        if (!cfg.sweep_grid.empty())
            os << "sweep_grid = " << detail::join(cfg.sweep_grid) << '\n';
        if (cfg.experiment == Experiment::gtable || cfg.gtable_ranks != ExperimentConfig{}.gtable_ranks)
            os << "gtable_ranks = " << detail::join(cfg.gtable_ranks) << '\n';
        if (!cfg.gtable_n1.empty())
            os << "gtable_n1 = " << detail::join(cfg.gtable_n1) << '\n';
        if (!cfg.gtable_m.empty())
            os << "gtable_m = " << detail::join(cfg.gtable_m) << '\n';
        return os.str();
    }
}

#endif
