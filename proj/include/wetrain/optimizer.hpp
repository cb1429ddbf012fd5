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

#ifndef WETRAIN_OPTIMIZER_HPP
#define WETRAIN_OPTIMIZER_HPP

// Exact maximization of the net harvested energy over (N1, E1, E2).
//
// For fixed (N1, E1) the phase-II energies decouple into per-rank
// water-filling problems. What remains is a one-dimensional problem in E1
// whose shape depends on where the threshold alpha sits relative to the
// range [beta M, beta G_1(N1,M)] of the selected-band powers:
//   case 1  alpha >= beta G_1          no phase-II training at any E1
//   case 2  alpha <  beta M            phase-II training on every rank
//   case 3  beta G_{j+1} <= alpha <= beta G_j, with G_{N2+1} read as M
// Cases 2 and 3 reduce to sums of linear fractions whose stationary points
// are the real roots of one polynomial per interval.
//
// The E1 problems are solved in the scaled variable u = E1 / c0, c0 = N0 / beta,
// where the objective becomes
//     phi(u) = A0 / (u + 1) + N1 u - sum_n B_n / (u + C_n)
// with A0 = Gamma sum(G_n - M), B_n = M (1 - M/G_n) / G_n, C_n = M / G_n
// (case 2) or the mixed A0 of case 3. All coefficients are O(1) to O(Gamma N2 G_1),
// independent of the physical energy scale.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "order_stats.hpp"
#include "parallel.hpp"
#include "poly_roots.hpp"
#include "system_params.hpp"
#include "training_model.hpp"

namespace wetrain
{
    struct CaseLabel
    {
        enum class Kind
        {
            case1_low_esnr,
            case2_high_esnr,
            case3_medium,
        };

        Kind kind = Kind::case1_low_esnr;
        int j = 0; // only for case3_medium, 1 <= j <= N2

        static CaseLabel case1() { return {Kind::case1_low_esnr, 0}; }
        static CaseLabel case2() { return {Kind::case2_high_esnr, 0}; }
        static CaseLabel case3(int j) { return {Kind::case3_medium, j}; }

        bool operator==(const CaseLabel &) const = default;
    };

    inline std::string to_string(const CaseLabel &c)
    {
        switch (c.kind)
        {
        case CaseLabel::Kind::case1_low_esnr:
            return "case1";
        case CaseLabel::Kind::case2_high_esnr:
            return "case2";
        case CaseLabel::Kind::case3_medium:
            return "case3(j=" + std::to_string(c.j) + ")";
        }
        return "unknown";
    }

    // Optimal E1 for one N1 and the corresponding net energy
    struct E1Solution
    {
        double E1 = 0.0;
        double value = 0.0;
        std::vector<double> candidates; // every E1 compared, in evaluation order
    };

    struct CandidateRecord
    {
        int N1 = 0;
        std::vector<double> E1;
    };

    struct Solution
    {
        TrainingPlan plan;
        double qnet_star = 0.0;
        std::vector<std::pair<int, CaseLabel>> case_used_per_N1; // ascending N1
        std::vector<double> value_per_N1;                         // Qnet*(N1), same order
        std::vector<double> e1_per_N1;                            // E1*(N1), same order
        std::vector<CandidateRecord> candidate_log;
    };

    // ------------------------------------------------------------------------
    // Phase II

    // Water level sqrt(eta T Ps (M-1) N0)
    inline double water_level(const SystemParams &p)
    {
        return std::sqrt(p.harvest_scale() * (p.M - 1) * p.N0);
    }

    // [water - N0 M / R]^+ for a band of prior power R
    inline double e2_star_for_power(double R, const SystemParams &p)
    {
        return std::max(0.0, water_level(p) - p.N0 * p.M / R);
    }

    inline double e2_star(int n, int N1, double E1, const SystemParams &p)
    {
        return e2_star_for_power(expected_power_rn(n, N1, E1, p), p);
    }

    // Optimal value of the rank-n phase-II subproblem: the energy lost to
    // imperfect beamforming plus the pilot spent.
    inline double v_star_for_power(double R, const SystemParams &p)
    {
        const double hs = p.harvest_scale();
        if (R <= alpha_threshold(p))
            return (p.M - 1) * hs * R / p.M;
        return 2.0 * std::sqrt((p.M - 1) * p.N0 * hs) - p.N0 * p.M / R;
    }

    inline double v_star(int n, int N1, double E1, const SystemParams &p)
    {
        return v_star_for_power(expected_power_rn(n, N1, E1, p), p);
    }

    // Net energy with the phase-II energies already optimized
    inline double qnet_reduced(int N1, double E1, const SystemParams &p)
    {
        const double hs = p.harvest_scale();
        double sum = 0.0;
        for (int n = 1; n <= p.N2; ++n)
        {
            const double R = expected_power_rn(n, N1, E1, p);
            sum += hs * R - v_star_for_power(R, p);
        }
        return sum - N1 * E1;
    }

    inline TrainingPlan plan_for(int N1, double E1, const SystemParams &p)
    {
        TrainingPlan plan{N1, E1, std::vector<double>(static_cast<std::size_t>(p.N2))};
        for (int n = 1; n <= p.N2; ++n)
            plan.E2[static_cast<std::size_t>(n - 1)] = e2_star(n, N1, E1, p);
        return plan;
    }

    // ------------------------------------------------------------------------
    // Case split

    namespace detail
    {
        inline std::vector<double> selected_gains(int N1, const SystemParams &p)
        {
            std::vector<double> G(static_cast<std::size_t>(p.N2));
            for (int n = 1; n <= p.N2; ++n)
                G[static_cast<std::size_t>(n - 1)] = g(n, N1, p.M);
            return G;
        }

        inline void check_population(int N1, const SystemParams &p)
        {
            p.validate();
            if (N1 < p.N2 || N1 > p.N)
                throw std::domain_error("optimizer: N1 must satisfy N2 <= N1 <= N");
        }
    }

    // Ties go to the lower case index: alpha == beta G_1 is case 1, and
    // alpha == beta G_k inside case 3 picks the smallest admissible j.
    inline CaseLabel classify_case(int N1, const SystemParams &p)
    {
        detail::check_population(N1, p);
        const double alpha = alpha_threshold(p);
        const std::vector<double> G = detail::selected_gains(N1, p);
        if (alpha >= p.beta * G.front())
            return CaseLabel::case1();
        if (alpha < p.beta * p.M)
            return CaseLabel::case2();
        // G is non-increasing; find the first rank j+1 with beta G_{j+1} <= alpha,
        // where rank N2+1 has G = M.
        const auto it = std::partition_point(G.begin(), G.end(), [&](double x) { return p.beta * x > alpha; });
        const int j = static_cast<int>(it - G.begin());
        return CaseLabel::case3(j);
    }

    // ------------------------------------------------------------------------
    // Case 1: closed form

    inline E1Solution solve_case1(int N1, const SystemParams &p)
    {
        detail::check_population(N1, p);
        const std::vector<double> G = detail::selected_gains(N1, p);
        double S = 0.0;
        for (double x : G)
            S += x / p.M - 1.0;
        const double Gamma = esnr(p);
        const double hs = p.harvest_scale();

        E1Solution s;
        s.E1 = std::sqrt(hs * p.N0) * std::max(0.0, std::sqrt(S / N1) - 1.0 / std::sqrt(Gamma));
        if (S < N1 / Gamma)
            s.value = hs * p.beta * p.N2;
        else
        {
            const double gap = std::sqrt(S) - std::sqrt(N1 / Gamma);
            s.value = hs * p.beta * (p.N2 + gap * gap);
        }
        s.candidates = {s.E1};
        return s;
    }

    // ------------------------------------------------------------------------
    // Cases 2 and 3: sums of linear fractions

    // Explicit objective of case 2 (every rank trained in phase II)
    inline double case2_objective(int N1, double E1, const SystemParams &p)
    {
        const double hs = p.harvest_scale();
        const double w2 = 2.0 * std::sqrt((p.M - 1) * p.N0 * hs);
        double sum = 0.0;
        for (int n = 1; n <= p.N2; ++n)
        {
            const double R = expected_power_rn(n, N1, E1, p);
            sum += hs * R - w2 + p.N0 * p.M / R;
        }
        return sum - N1 * E1;
    }

    // f_k: ranks 1..k trained in phase II, ranks k+1..N2 not
    inline double case3_objective(int k, int N1, double E1, const SystemParams &p)
    {
        if (k < 0 || k > p.N2)
            throw std::domain_error("case3_objective: need 0 <= k <= N2");
        const double hs = p.harvest_scale();
        const double w2 = 2.0 * std::sqrt((p.M - 1) * p.N0 * hs);
        double sum = 0.0;
        for (int n = 1; n <= p.N2; ++n)
        {
            const double R = expected_power_rn(n, N1, E1, p);
            if (n <= k)
                sum += hs * R - w2 + p.N0 * p.M / R;
            else
                sum += hs * R - (p.M - 1) * hs * R / p.M;
        }
        return sum - N1 * E1;
    }

    namespace detail
    {
        // phi(u) = A0/(u+1) + N1 u - sum_n B[n]/(u + C[n])
        struct FractionalObjective
        {
            double A0 = 0.0;
            double N1 = 0.0;
            std::vector<double> B;
            std::vector<double> C;

            double operator()(double u) const
            {
                double v = A0 / (u + 1.0) + N1 * u;
                for (std::size_t i = 0; i < B.size(); ++i)
                    v -= B[i] / (u + C[i]);
                return v;
            }

            // phi'(u) (u+1)^2 prod (u+C_i)^2, degree 2K+2
            Polynomial stationary_polynomial() const
            {
                const Polynomial u_plus_1 = {1.0, 1.0};
                const Polynomial sq1 = poly_multiply(u_plus_1, u_plus_1);

                std::vector<Polynomial> sq(C.size());
                for (std::size_t i = 0; i < C.size(); ++i)
                {
                    const Polynomial q = {C[i], 1.0};
                    sq[i] = poly_multiply(q, q);
                }
                Polynomial prod_all = {1.0};
                for (const auto &s : sq)
                    prod_all = poly_multiply(prod_all, s);

                Polynomial result = poly_scale(poly_multiply(sq1, prod_all), N1);
                result = poly_add(result, poly_scale(prod_all, -A0));
                for (std::size_t n = 0; n < C.size(); ++n)
                {
                    Polynomial others = {B[n]};
                    for (std::size_t i = 0; i < C.size(); ++i)
                        if (i != n)
                            others = poly_multiply(others, sq[i]);
                    result = poly_add(result, poly_multiply(sq1, others));
                }
                return result;
            }
        };

        struct ScaledMinimum
        {
            double u = 0.0;
            std::vector<double> candidates;
        };

        // Minimize phi over [u_lo, u_hi] (u_hi may be +inf) by comparing the
        // endpoints with every stationary point inside. Ties keep the smaller u.
        inline ScaledMinimum minimize_fractional(const FractionalObjective &phi, double u_lo, double u_hi)
        {
            ScaledMinimum r;
            r.candidates.push_back(u_lo);
            for (double x : poly_real_roots(phi.stationary_polynomial()))
                if (x > u_lo && x < u_hi)
                    r.candidates.push_back(x);
            if (std::isfinite(u_hi))
                r.candidates.push_back(u_hi);
            std::sort(r.candidates.begin(), r.candidates.end());

            double best = std::numeric_limits<double>::infinity();
            r.u = u_lo;
            for (double x : r.candidates)
            {
                const double v = phi(x);
                if (v < best)
                {
                    best = v;
                    r.u = x;
                }
            }
            return r;
        }

        // Scaled objective on an E1 range where exactly the ranks with
        // trained[n] set receive phase-II energy
        inline FractionalObjective scaled_objective(int N1, const std::vector<bool> &trained, const std::vector<double> &G,
                                                    const SystemParams &p)
        {
            const double Gamma = esnr(p);
            const double M = p.M;
            FractionalObjective phi;
            phi.N1 = N1;
            double a = 0.0;
            for (std::size_t n = 0; n < G.size(); ++n)
            {
                if (trained[n])
                {
                    a += G[n] - M;
                    phi.B.push_back(M * (1.0 - M / G[n]) / G[n]);
                    phi.C.push_back(M / G[n]);
                }
                else
                    a += G[n] / M - 1.0;
            }
            phi.A0 = Gamma * a;
            return phi;
        }

        // Ranks 1..k trained
        inline FractionalObjective scaled_objective(int N1, int k, const std::vector<double> &G, const SystemParams &p)
        {
            std::vector<bool> trained(G.size(), false);
            for (int n = 0; n < k; ++n)
                trained[static_cast<std::size_t>(n)] = true;
            return scaled_objective(N1, trained, G, p);
        }

        // E1 at which R_n = alpha; meaningful when alpha lies strictly between
        // beta M and beta G_n
        inline double crossing_energy(double Gn, double alpha, const SystemParams &p)
        {
            return p.N0 * (alpha - p.beta * p.M) / (p.beta * (p.beta * Gn - alpha));
        }
    }

    // Case 2. When some rank has beta G_n < alpha (possible only if G_n < M,
    // i.e. the lowest ranks of a small population), its power falls through
    // alpha as E1 grows and phase-II training stops paying there. The E1 axis
    // is then cut at those crossings and each piece solved with its own
    // trained set; otherwise this is the single-interval problem.
    inline E1Solution solve_case2(int N1, const SystemParams &p)
    {
        detail::check_population(N1, p);
        const std::vector<double> G = detail::selected_gains(N1, p);
        const double c0 = p.N0 / p.beta;
        const double alpha = alpha_threshold(p);
        const double inf = std::numeric_limits<double>::infinity();

        std::vector<double> crossing(G.size(), inf);
        std::vector<double> cuts = {0.0};
        for (std::size_t n = 0; n < G.size(); ++n)
            if (p.beta * G[n] < alpha)
            {
                crossing[n] = detail::crossing_energy(G[n], alpha, p);
                cuts.push_back(crossing[n]);
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(inf);

        E1Solution s;
        double best = -inf;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        {
            const double lo = cuts[i], hi = cuts[i + 1];
            if (!(hi > lo))
                continue;
            std::vector<bool> trained(G.size());
            for (std::size_t n = 0; n < G.size(); ++n)
                trained[n] = crossing[n] >= hi;
            const auto phi = detail::scaled_objective(N1, trained, G, p);
            const auto m = detail::minimize_fractional(phi, lo / c0, hi / c0);
            for (double u : m.candidates)
                s.candidates.push_back(std::clamp(c0 * u, lo, hi));
            const double e1 = std::clamp(c0 * m.u, lo, hi);
            const double v = cuts.size() == 2 ? case2_objective(N1, e1, p) : qnet_reduced(N1, e1, p);
            if (v > best)
            {
                best = v;
                s.E1 = e1;
            }
        }
        s.value = best;
        return s;
    }

    // Interval boundaries of case 3: E1^(0) = 0, E1^(k) where R_k crosses alpha,
    //     N0 (alpha - beta M) / (beta (beta G_k - alpha)),
    // and E1^(j+1) = +inf.
    inline std::vector<double> case3_boundaries(int N1, int j, const SystemParams &p)
    {
        const std::vector<double> G = detail::selected_gains(N1, p);
        const double alpha = alpha_threshold(p);
        std::vector<double> E(static_cast<std::size_t>(j + 2));
        E[0] = 0.0;
        for (int k = 1; k <= j; ++k)
            E[static_cast<std::size_t>(k)] = detail::crossing_energy(G[static_cast<std::size_t>(k - 1)], alpha, p);
        E[static_cast<std::size_t>(j + 1)] = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= j + 1; ++k)
            if (!(E[static_cast<std::size_t>(k)] >= E[static_cast<std::size_t>(k - 1)]))
                throw std::logic_error("case3_boundaries: interval boundaries are not increasing");
        return E;
    }

    inline E1Solution solve_case3(int N1, int j, const SystemParams &p)
    {
        detail::check_population(N1, p);
        if (j < 1 || j > p.N2)
            throw std::domain_error("solve_case3: need 1 <= j <= N2");
        const std::vector<double> G = detail::selected_gains(N1, p);
        const std::vector<double> E = case3_boundaries(N1, j, p);
        const double c0 = p.N0 / p.beta;

        E1Solution s;
        double best = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= j; ++k)
        {
            const double lo = E[static_cast<std::size_t>(k)];
            const double hi = E[static_cast<std::size_t>(k + 1)];
            if (!std::isfinite(lo))
                continue; // empty interval from a tie alpha == beta G_k
            const auto phi = detail::scaled_objective(N1, k, G, p);
            const auto m = detail::minimize_fractional(phi, lo / c0, hi / c0);
            for (double u : m.candidates)
                s.candidates.push_back(std::clamp(c0 * u, lo, hi));
            const double e1 = std::clamp(c0 * m.u, lo, hi);
            const double v = case3_objective(k, N1, e1, p);
            if (v > best)
            {
                best = v;
                s.E1 = e1;
            }
        }
        s.value = best;
        return s;
    }

    inline E1Solution solve_for_population(int N1, const CaseLabel &c, const SystemParams &p)
    {
        switch (c.kind)
        {
        case CaseLabel::Kind::case1_low_esnr:
            return solve_case1(N1, p);
        case CaseLabel::Kind::case2_high_esnr:
            return solve_case2(N1, p);
        case CaseLabel::Kind::case3_medium:
            return solve_case3(N1, c.j, p);
        }
        throw std::logic_error("solve_for_population: unknown case");
    }

    // Outer search over N1 = N2..N. Ties in Qnet*(N1) go to the smaller N1.
    inline Solution solve_p1(const SystemParams &p)
    {
        p.validate();
        const int count = p.N - p.N2 + 1;
        std::vector<CaseLabel> cases(static_cast<std::size_t>(count));
        std::vector<E1Solution> per(static_cast<std::size_t>(count));
        std::vector<std::string> failures(static_cast<std::size_t>(count));

        parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
            const int N1 = p.N2 + static_cast<int>(i);
            try
            {
                cases[i] = classify_case(N1, p);
                per[i] = solve_for_population(N1, cases[i], p);
            }
            catch (const std::exception &e)
            {
                failures[i] = e.what();
            }
        });

        std::vector<int> failed;
        std::ostringstream msg;
        for (int i = 0; i < count; ++i)
            if (!failures[static_cast<std::size_t>(i)].empty())
            {
                failed.push_back(p.N2 + i);
                msg << (failed.size() == 1 ? "" : "; ") << "N1=" << p.N2 + i << ": " << failures[static_cast<std::size_t>(i)];
            }
        if (!failed.empty())
            throw solver_error("solve_p1 failed for " + std::to_string(failed.size()) + " value(s) of N1: " + msg.str(),
                               failed);

        Solution sol;
        int best = 0;
        for (int i = 0; i < count; ++i)
        {
            const auto idx = static_cast<std::size_t>(i);
            sol.case_used_per_N1.emplace_back(p.N2 + i, cases[idx]);
            sol.value_per_N1.push_back(per[idx].value);
            sol.e1_per_N1.push_back(per[idx].E1);
            sol.candidate_log.push_back({p.N2 + i, per[idx].candidates});
            if (per[idx].value > per[static_cast<std::size_t>(best)].value)
                best = i;
        }
        sol.plan = plan_for(p.N2 + best, per[static_cast<std::size_t>(best)].E1, p);
        sol.qnet_star = qnet(sol.plan, p);
        return sol;
    }

    // ------------------------------------------------------------------------
    // Single-phase designs used as benchmarks

    // Phase I only: rank N1 bands by noisy pilots, transmit isotropically on the
    // best N2. Its net energy is the case-1 objective at every ESNR.
    struct PhaseIDesign
    {
        int N1 = 0;
        double E1 = 0.0;
        double value = 0.0;
    };

    inline PhaseIDesign optimize_phase1_only(const SystemParams &p)
    {
        p.validate();
        PhaseIDesign best{p.N2, 0.0, -std::numeric_limits<double>::infinity()};
        for (int N1 = p.N2; N1 <= p.N; ++N1)
        {
            const E1Solution s = solve_case1(N1, p);
            if (s.value > best.value)
                best = {N1, s.E1, s.value};
        }
        return best;
    }

    // Phase II only: N2 fixed bands with prior power beta M, per-band water-filling
    inline std::vector<double> optimize_phase2_only(const SystemParams &p)
    {
        p.validate();
        return std::vector<double>(static_cast<std::size_t>(p.N2), e2_star_for_power(p.beta * p.M, p));
    }

    // Analytic net energy of the phase-II-only design with energies E2
    inline double phase2_only_qnet(const std::vector<double> &E2, const SystemParams &p)
    {
        const double R = p.beta * p.M;
        double sum = 0.0;
        for (double e : E2)
            sum += p.harvest_scale() * R * (1.0 - (p.M - 1) * p.N0 / (e * R + p.N0 * p.M)) - e;
        return sum;
    }
}

#endif
