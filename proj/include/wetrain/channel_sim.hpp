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

#ifndef WETRAIN_CHANNEL_SIM_HPP
#define WETRAIN_CHANNEL_SIM_HPP

// Monte Carlo simulation of the two-phase protocol and of the benchmark
// schemes. Every trial draws its randomness from substreams keyed by
// (seed, trial, stream), so a trial sees the same channels under every scheme
// and results do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "order_stats.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "system_params.hpp"
#include "training_model.hpp"

namespace wetrain
{
    using cdouble = std::complex<double>;

    // Channel vectors of `bands` sub-bands, band-major: entry m of band n is h[n*M + m].
    struct ChannelRealization
    {
        int M = 0;
        int bands = 0;
        std::vector<cdouble> h;

        std::span<const cdouble> band(int n) const
        {
            return {h.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(M), static_cast<std::size_t>(M)};
        }
    };

    // The first `bands` channels of trial `trial`; a prefix of the full N-band draw.
    inline ChannelRealization draw_channels(const SystemParams &p, std::uint64_t seed, std::uint64_t trial, int bands)
    {
        if (bands < 0 || bands > p.N)
            throw std::domain_error("draw_channels: need 0 <= bands <= N");
        ChannelRealization c{p.M, bands, std::vector<cdouble>(static_cast<std::size_t>(bands) * static_cast<std::size_t>(p.M))};
        auto engine = substream(seed, trial, Stream::channel);
        ComplexGaussian gauss(p.beta);
        for (auto &x : c.h)
            x = gauss(engine);
        return c;
    }

    inline ChannelRealization draw_channels(const SystemParams &p, std::uint64_t seed, std::uint64_t trial)
    {
        return draw_channels(p, seed, trial, p.N);
    }

    // ------------------------------------------------------------------------
    // Schemes

    struct TwoPhase
    {
        TrainingPlan plan;
    };

    // Exact channels of all N bands; strongest N2 with true-channel MRT, no cost
    struct PerfectCsi
    {
    };

    // First N2 bands, isotropic transmission, no cost
    struct NoCsi
    {
    };

    // Phase-I ranking only; isotropic transmission on the best N2
    struct PhaseIOnly
    {
        int N1 = 0;
        double E1 = 0.0;
    };

    // Phase-II estimation only on the first N2 bands (prior power beta M)
    struct PhaseIIOnly
    {
        std::vector<double> E2;
    };

    // LMMSE estimates of all N bands with pilot energy E each; MRT on the N2
    // largest estimates
    struct BruteForce
    {
        double E = 0.0;
    };

    using Scheme = std::variant<TwoPhase, PerfectCsi, NoCsi, PhaseIOnly, PhaseIIOnly, BruteForce>;

    inline const char *scheme_name(const Scheme &s)
    {
        constexpr const char *names[] = {"two_phase", "perfect_csi", "no_csi", "phase1_only", "phase2_only", "brute_force"};
        return names[s.index()];
    }

    struct EnergyReport
    {
        double mean_qnet = 0.0;
        double mean_qbar = 0.0;
        double training_cost = 0.0;
        double standard_error = 0.0; // of both means; the cost is deterministic
        std::int64_t trials = 0;
        std::uint64_t seed = 0;
    };

    inline double scheme_cost(const Scheme &s, const SystemParams &p)
    {
        return std::visit(
            [&](const auto &x) -> double
            {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, TwoPhase>)
                    return x.plan.training_cost();
                else if constexpr (std::is_same_v<T, PhaseIOnly>)
                    return x.N1 * x.E1;
                else if constexpr (std::is_same_v<T, PhaseIIOnly>)
                    return std::accumulate(x.E2.begin(), x.E2.end(), 0.0);
                else if constexpr (std::is_same_v<T, BruteForce>)
                    return p.N * x.E;
                else
                    return 0.0;
            },
            s);
    }

    namespace detail
    {
        inline double squared_norm(std::span<const cdouble> v)
        {
            double s = 0.0;
            for (const auto &x : v)
                s += std::norm(x);
            return s;
        }

        // |h^H w|^2 / ||w||^2: received power per unit transmit power under MRT along w
        inline double beamforming_gain(std::span<const cdouble> h, std::span<const cdouble> w)
        {
            cdouble inner = 0.0;
            for (std::size_t m = 0; m < h.size(); ++m)
                inner += std::conj(h[m]) * w[m];
            return std::norm(inner) / squared_norm(w);
        }

        // Indices of the `keep` largest scores, descending; ties keep the lower index.
        inline void top_indices(const std::vector<double> &score, int keep, std::vector<int> &out)
        {
            out.resize(score.size());
            std::iota(out.begin(), out.end(), 0);
            std::partial_sort(out.begin(), out.begin() + keep, out.end(),
                              [&](int a, int b)
                              {
                                  const double sa = score[static_cast<std::size_t>(a)];
                                  const double sb = score[static_cast<std::size_t>(b)];
                                  return sa > sb || (sa == sb && a < b);
                              });
            out.resize(static_cast<std::size_t>(keep));
        }

        // Noisy pilot observations sqrt(E) h + z of the first `bands` bands and
        // their energies ||y||^2
        inline void observe(const ChannelRealization &c, int bands, double E, double N0, SplitMix64 &engine,
                            std::vector<cdouble> &y, std::vector<double> &energy)
        {
            ComplexGaussian noise(N0);
            const double a = std::sqrt(E);
            y.resize(static_cast<std::size_t>(bands) * static_cast<std::size_t>(c.M));
            energy.assign(static_cast<std::size_t>(bands), 0.0);
            for (int n = 0; n < bands; ++n)
            {
                double e = 0.0;
                for (int m = 0; m < c.M; ++m)
                {
                    const std::size_t k = static_cast<std::size_t>(n) * static_cast<std::size_t>(c.M) + static_cast<std::size_t>(m);
                    y[k] = a * c.h[k] + noise(engine);
                    e += std::norm(y[k]);
                }
                energy[static_cast<std::size_t>(n)] = e;
            }
        }

        // Harvest on one band after a phase-II observation with energy E2.
        // The LMMSE estimate is a positive multiple of y, so MRT along y is MRT
        // along h_hat. With E2 = 0 the estimate is zero and transmission falls
        // back to isotropic.
        inline double phase2_harvest(std::span<const cdouble> h, double E2, double N0, SplitMix64 &engine,
                                     std::vector<cdouble> &y)
        {
            ComplexGaussian noise(N0);
            const double a = std::sqrt(E2);
            y.resize(h.size());
            for (std::size_t m = 0; m < h.size(); ++m)
                y[m] = a * h[m] + noise(engine);
            if (E2 <= 0.0)
                return squared_norm(h) / static_cast<double>(h.size());
            return beamforming_gain(h, y);
        }

        struct Scratch
        {
            std::vector<cdouble> y;
            std::vector<cdouble> y2;
            std::vector<double> score;
            std::vector<int> order;
        };

        // Received channel power summed over the N2 bands a scheme serves in one trial
        // (multiply by eta T Ps for energy).
        inline double trial_gain(const Scheme &s, const SystemParams &p, std::uint64_t seed, std::uint64_t trial,
                                 Scratch &w)
        {
            auto p2 = substream(seed, trial, Stream::phase2_noise);
            return std::visit(
                [&](const auto &x) -> double
                {
                    using T = std::decay_t<decltype(x)>;
                    double sum = 0.0;
                    if constexpr (std::is_same_v<T, TwoPhase>)
                    {
                        const auto c = draw_channels(p, seed, trial, x.plan.N1);
                        auto p1 = substream(seed, trial, Stream::phase1_noise);
                        observe(c, x.plan.N1, x.plan.E1, p.N0, p1, w.y, w.score);
                        top_indices(w.score, p.N2, w.order);
                        for (int r = 0; r < p.N2; ++r)
                            sum += phase2_harvest(c.band(w.order[static_cast<std::size_t>(r)]),
                                                  x.plan.E2[static_cast<std::size_t>(r)], p.N0, p2, w.y2);
                    }
                    else if constexpr (std::is_same_v<T, PerfectCsi>)
                    {
                        const auto c = draw_channels(p, seed, trial, p.N);
                        w.score.resize(static_cast<std::size_t>(p.N));
                        for (int n = 0; n < p.N; ++n)
                            w.score[static_cast<std::size_t>(n)] = squared_norm(c.band(n));
                        top_indices(w.score, p.N2, w.order);
                        for (int r = 0; r < p.N2; ++r)
                            sum += w.score[static_cast<std::size_t>(w.order[static_cast<std::size_t>(r)])];
                    }
                    else if constexpr (std::is_same_v<T, NoCsi>)
                    {
                        const auto c = draw_channels(p, seed, trial, p.N2);
                        for (int n = 0; n < p.N2; ++n)
                            sum += squared_norm(c.band(n)) / p.M;
                    }
                    else if constexpr (std::is_same_v<T, PhaseIOnly>)
                    {
                        const auto c = draw_channels(p, seed, trial, x.N1);
                        auto p1 = substream(seed, trial, Stream::phase1_noise);
                        observe(c, x.N1, x.E1, p.N0, p1, w.y, w.score);
                        top_indices(w.score, p.N2, w.order);
                        for (int r = 0; r < p.N2; ++r)
                            sum += squared_norm(c.band(w.order[static_cast<std::size_t>(r)])) / p.M;
                    }
                    else if constexpr (std::is_same_v<T, PhaseIIOnly>)
                    {
                        const auto c = draw_channels(p, seed, trial, p.N2);
                        for (int n = 0; n < p.N2; ++n)
                            sum += phase2_harvest(c.band(n), x.E2[static_cast<std::size_t>(n)], p.N0, p2, w.y2);
                    }
                    else if constexpr (std::is_same_v<T, BruteForce>)
                    {
                        // equal priors make every LMMSE coefficient equal, so ranking
                        // by ||h_hat||^2 is ranking by ||y||^2
                        const auto c = draw_channels(p, seed, trial, p.N);
                        auto p1 = substream(seed, trial, Stream::phase1_noise);
                        observe(c, p.N, x.E, p.N0, p1, w.y, w.score);
                        top_indices(w.score, p.N2, w.order);
                        for (int r = 0; r < p.N2; ++r)
                        {
                            const int n = w.order[static_cast<std::size_t>(r)];
                            const auto h = c.band(n);
                            if (x.E <= 0.0)
                                sum += squared_norm(h) / p.M;
                            else
                                sum += beamforming_gain(
                                    h, std::span<const cdouble>(w.y.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(p.M),
                                                                static_cast<std::size_t>(p.M)));
                        }
                    }
                    return sum;
                },
                s);
        }

        inline void validate_scheme(const Scheme &s, const SystemParams &p)
        {
            std::visit(
                [&](const auto &x)
                {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, TwoPhase>)
                        x.plan.validate(p);
                    else if constexpr (std::is_same_v<T, PhaseIOnly>)
                        TrainingPlan{x.N1, x.E1, std::vector<double>(static_cast<std::size_t>(p.N2), 0.0)}.validate(p);
                    else if constexpr (std::is_same_v<T, PhaseIIOnly>)
                        TrainingPlan{p.N2, 0.0, x.E2}.validate(p);
                    else if constexpr (std::is_same_v<T, BruteForce>)
                    {
                        if (!(x.E >= 0.0) || !std::isfinite(x.E))
                            throw std::invalid_argument("BruteForce: pilot energy must be finite and non-negative");
                    }
                },
                s);
        }
    }

    inline EnergyReport run_benchmark(const Scheme &s, const SystemParams &p, std::int64_t trials, std::uint64_t seed)
    {
        p.validate();
        detail::validate_scheme(s, p);
        if (trials < 1)
            throw std::invalid_argument("run_benchmark: trials must be >= 1");
        const auto stats = run_trials(trials, 1,
                                      [&](std::int64_t t, std::span<double> out)
                                      {
                                          thread_local detail::Scratch w;
                                          out[0] = detail::trial_gain(s, p, seed, static_cast<std::uint64_t>(t), w);
                                      });
        const double hs = p.harvest_scale();
        EnergyReport r;
        r.mean_qbar = hs * stats[0].mean;
        r.standard_error = hs * stats[0].stderr_of_mean();
        r.training_cost = scheme_cost(s, p);
        r.mean_qnet = r.mean_qbar - r.training_cost;
        r.trials = trials;
        r.seed = seed;
        return r;
    }

    inline EnergyReport run_two_phase(const TrainingPlan &plan, const SystemParams &p, std::int64_t trials,
                                      std::uint64_t seed)
    {
        return run_benchmark(TwoPhase{plan}, p, trials, seed);
    }

    // Pilot energy for the brute-force benchmark: golden-section search of the
    // empirical net energy over [0, E_max] at pilot scale. E_max is where the
    // pilot cost alone equals the perfect-CSI energy.
    inline double tune_brute_force(const SystemParams &p, std::int64_t pilot_trials, std::uint64_t seed)
    {
        p.validate();
        double ideal = 0.0;
        for (int n = 1; n <= p.N2; ++n)
            ideal += g(n, p.N, p.M);
        const double e_max = p.harvest_scale() * p.beta * ideal / p.N;
        auto f = [&](double E) { return run_benchmark(BruteForce{E}, p, pilot_trials, seed).mean_qnet; };

        const double r = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = 0.0, b = e_max;
        double c = b - r * (b - a), d = a + r * (b - a);
        double fc = f(c), fd = f(d);
        for (int i = 0; i < 25; ++i)
        {
            if (fc >= fd)
            {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = f(c);
            }
            else
            {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = f(d);
            }
        }
        const double best = fc >= fd ? c : d;
        return f(0.0) >= f(best) ? 0.0 : best;
    }

    // Empirical E||h_[n]||^2 of the phase-I ranks 1..N2: selection only,
    // no phase II.
    inline std::vector<RunningStats> conditional_moment_check(int N1, double E1, const SystemParams &p, std::int64_t trials,
                                                              std::uint64_t seed)
    {
        p.validate();
        TrainingPlan{N1, E1, std::vector<double>(static_cast<std::size_t>(p.N2), 0.0)}.validate(p);
        if (trials < 1)
            throw std::invalid_argument("conditional_moment_check: trials must be >= 1");
        return run_trials(trials, static_cast<std::size_t>(p.N2),
                          [&](std::int64_t t, std::span<double> out)
                          {
                              thread_local detail::Scratch w;
                              const auto c = draw_channels(p, seed, static_cast<std::uint64_t>(t), N1);
                              auto p1 = substream(seed, static_cast<std::uint64_t>(t), Stream::phase1_noise);
                              detail::observe(c, N1, E1, p.N0, p1, w.y, w.score);
                              detail::top_indices(w.score, p.N2, w.order);
                              for (int r = 0; r < p.N2; ++r)
                                  out[static_cast<std::size_t>(r)] = detail::squared_norm(c.band(w.order[static_cast<std::size_t>(r)]));
                          });
    }
}

#endif
