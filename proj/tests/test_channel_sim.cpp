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

#include <cmath>
#include <cstdlib>

#include <wetrain/channel_sim.hpp>
#include <wetrain/optimizer.hpp>

using namespace wetrain;
using Catch::Matchers::WithinRel;

namespace
{
    SystemParams params(int M, int N, int N2, double T = 1e-3)
    {
        SystemParams p;
        p.M = M;
        p.N = N;
        p.N2 = N2;
        p.Ps = 0.06;
        p.eta = 0.8;
        p.T = T;
        p.beta = 1e-6;
        p.N0 = 1e-19;
        return p;
    }

    bool within_sigma(double empirical, double expected, double stderr_of_mean, double k = 3.0)
    {
        return std::abs(empirical - expected) <= k * stderr_of_mean;
    }
}

TEST_CASE("Channel draws", "[channel_sim]")
{
    const SystemParams p = params(3, 10, 2);
    const auto a = draw_channels(p, 5, 17);
    const auto b = draw_channels(p, 5, 17);
    CHECK(a.h == b.h);
    CHECK(a.h != draw_channels(p, 5, 18).h);
    CHECK(a.h != draw_channels(p, 6, 17).h);
    const auto prefix = draw_channels(p, 5, 17, 4);
    REQUIRE(prefix.h.size() == 12u);
    CHECK(std::equal(prefix.h.begin(), prefix.h.end(), a.h.begin()));
    CHECK(a.band(2).size() == 3u);
    CHECK(a.band(2)[1] == a.h[7]);
    CHECK_THROWS_AS(draw_channels(p, 1, 1, 11), std::domain_error);

    // moments: E||h_n||^2 = beta M, off-diagonal correlations vanish
    RunningStats power, cross_re, cross_im;
    for (std::uint64_t t = 0; t < 10000; ++t)
    {
        const auto c = draw_channels(p, 99, t);
        for (int n = 0; n < p.N; ++n)
        {
            const auto h = c.band(n);
            power.add(detail::squared_norm(h));
            const cdouble x = h[0] * std::conj(h[1]);
            cross_re.add(x.real());
            cross_im.add(x.imag());
        }
    }
    CHECK(power.count == 100000);
    CHECK(within_sigma(power.mean, p.beta * p.M, power.stderr_of_mean()));
    CHECK(within_sigma(cross_re.mean, 0.0, cross_re.stderr_of_mean()));
    CHECK(within_sigma(cross_im.mean, 0.0, cross_im.stderr_of_mean()));

    // strongest of N1 bands
    RunningStats top;
    for (std::uint64_t t = 0; t < 20000; ++t)
    {
        const auto c = draw_channels(p, 7, t, 8);
        double best = 0.0;
        for (int n = 0; n < 8; ++n)
            best = std::max(best, detail::squared_norm(c.band(n)));
        top.add(best);
    }
    CHECK(within_sigma(top.mean, p.beta * g(1, 8, p.M), top.stderr_of_mean()));
}

TEST_CASE("Zero plan and the no-CSI benchmark", "[channel_sim]")
{
    const SystemParams p = params(4, 20, 3);
    const double expected = p.harvest_scale() * p.beta * p.N2;
    const EnergyReport zero = run_two_phase(TrainingPlan::zero(p), p, 20000, 1);
    CHECK(zero.training_cost == 0.0);
    CHECK(within_sigma(zero.mean_qnet, expected, zero.standard_error));
    const EnergyReport none = run_benchmark(NoCsi{}, p, 20000, 2);
    CHECK(within_sigma(none.mean_qnet, expected, none.standard_error));
    CHECK(none.trials == 20000);
    CHECK(none.seed == 2u);
}

TEST_CASE("Perfect CSI benchmark", "[channel_sim]")
{
    const SystemParams p = params(2, 30, 3);
    double ideal = 0.0;
    for (int n = 1; n <= p.N2; ++n)
        ideal += p.harvest_scale() * p.beta * g(n, p.N, p.M);
    const EnergyReport r = run_benchmark(PerfectCsi{}, p, 100000, 3);
    CHECK(r.training_cost == 0.0);
    CHECK(within_sigma(r.mean_qnet, ideal, r.standard_error));
}

TEST_CASE("Simulated two-phase protocol matches the analysis", "[channel_sim]")
{
    for (int M : {1, 4, 8})
        for (double T : {1e-4, 1e-3})
        {
            const SystemParams p = params(M, 40, 3, T);
            const Solution s = solve_p1(p);
            const EnergyReport r = run_two_phase(s.plan, p, 20000, 11);
            INFO("M=" << M << " T=" << T << " N1=" << s.plan.N1);
            CHECK(within_sigma(r.mean_qbar, qbar(s.plan, p), r.standard_error));
            CHECK(r.training_cost == s.plan.training_cost());
            CHECK_THAT(r.mean_qnet + r.training_cost, WithinRel(r.mean_qbar, 1e-15));
        }

    // hand-picked plan with uneven phase-II energies
    const SystemParams p = params(6, 25, 3);
    const TrainingPlan plan{10, 5e-14, {4e-13, 1e-13, 0.0}};
    const EnergyReport r = run_two_phase(plan, p, 20000, 12);
    CHECK(within_sigma(r.mean_qbar, qbar(plan, p), r.standard_error));
}

TEST_CASE("Phase-II energy is pure cost with one antenna", "[channel_sim]")
{
    const SystemParams p = params(1, 20, 3);
    const TrainingPlan without{8, 1e-13, {0.0, 0.0, 0.0}};
    const TrainingPlan with{8, 1e-13, {1e-12, 2e-12, 3e-12}};
    const EnergyReport a = run_two_phase(without, p, 5000, 4);
    const EnergyReport b = run_two_phase(with, p, 5000, 4);
    CHECK_THAT(b.mean_qbar, WithinRel(a.mean_qbar, 1e-12));
    CHECK_THAT(a.mean_qnet - b.mean_qnet, WithinRel(6e-12, 1e-9));
}

TEST_CASE("Single-phase benchmarks match their analysis", "[channel_sim]")
{
    const SystemParams p = params(4, 40, 3, 1e-3);
    const PhaseIDesign d = optimize_phase1_only(p);
    const EnergyReport r1 = run_benchmark(PhaseIOnly{d.N1, d.E1}, p, 20000, 8);
    CHECK(within_sigma(r1.mean_qnet, d.value, r1.standard_error));
    CHECK(r1.training_cost == d.N1 * d.E1);

    const auto e2 = optimize_phase2_only(p);
    const EnergyReport r2 = run_benchmark(PhaseIIOnly{e2}, p, 20000, 9);
    CHECK(within_sigma(r2.mean_qnet, phase2_only_qnet(e2, p), r2.standard_error));

    CHECK_THROWS_AS(run_benchmark(PhaseIOnly{2, 0.0}, p, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_benchmark(PhaseIIOnly{{1.0}}, p, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_benchmark(BruteForce{-1.0}, p, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_benchmark(NoCsi{}, p, 0, 1), std::invalid_argument);
}

TEST_CASE("Brute-force benchmark", "[channel_sim]")
{
    const SystemParams p = params(4, 12, 2, 1e-3);
    // no pilot energy: ranking by noise, isotropic transmission
    const EnergyReport zero = run_benchmark(BruteForce{0.0}, p, 20000, 5);
    CHECK(within_sigma(zero.mean_qnet, p.harvest_scale() * p.beta * p.N2, zero.standard_error));

    const double E = tune_brute_force(p, 1000, 6);
    CHECK(E >= 0.0);
    const EnergyReport tuned = run_benchmark(BruteForce{E}, p, 1000, 6);
    for (double scale : {0.0, 0.25, 4.0})
        CHECK(run_benchmark(BruteForce{E * scale}, p, 1000, 6).mean_qnet <= tuned.mean_qnet);
    CHECK(tuned.training_cost == p.N * E);
    CHECK(scheme_cost(BruteForce{E}, p) == p.N * E);
    CHECK(std::string(scheme_name(BruteForce{E})) == "brute_force");
}

TEST_CASE("Information ordering", "[channel_sim]")
{
    const SystemParams p = params(8, 60, 4, 1e-3);
    const Solution s = solve_p1(p);
    const EnergyReport perfect = run_benchmark(PerfectCsi{}, p, 5000, 21);
    const EnergyReport two = run_two_phase(s.plan, p, 5000, 21);
    const EnergyReport none = run_benchmark(NoCsi{}, p, 5000, 21);
    CHECK(perfect.mean_qbar > two.mean_qbar);
    CHECK(two.mean_qnet > none.mean_qnet);
}

TEST_CASE("Conditional moments of the selected bands", "[channel_sim]")
{
    const SystemParams p = params(3, 20, 3);
    for (double E1 : {2e-14, 1e-13})
    {
        const auto m = conditional_moment_check(12, E1, p, 40000, 31);
        REQUIRE(m.size() == 3u);
        for (int n = 1; n <= 3; ++n)
        {
            INFO("E1=" << E1 << " n=" << n);
            const auto &r = m[static_cast<std::size_t>(n - 1)];
            CHECK(within_sigma(r.mean, expected_power_rn(n, 12, E1, p), r.stderr_of_mean()));
        }
    }
    // pure-noise ranking and near-perfect ranking
    for (const auto &r : conditional_moment_check(12, 0.0, p, 40000, 32))
        CHECK(within_sigma(r.mean, p.beta * p.M, r.stderr_of_mean()));
    const auto sharp = conditional_moment_check(12, 1e-9, p, 40000, 33);
    CHECK(within_sigma(sharp[0].mean, p.beta * g(1, 12, p.M), sharp[0].stderr_of_mean()));
}

TEST_CASE("Reports do not depend on the thread count", "[channel_sim]")
{
    const SystemParams p = params(4, 30, 3);
    const TrainingPlan plan{12, 5e-14, {1e-13, 1e-13, 1e-13}};
    ::setenv("WETRAIN_THREADS", "1", 1);
    const EnergyReport a = run_two_phase(plan, p, 5000, 77);
    ::setenv("WETRAIN_THREADS", "3", 1);
    const EnergyReport b = run_two_phase(plan, p, 5000, 77);
    ::unsetenv("WETRAIN_THREADS");
    CHECK(a.mean_qbar == b.mean_qbar);
    CHECK(a.standard_error == b.standard_error);
    CHECK(a.mean_qnet == b.mean_qnet);
}
