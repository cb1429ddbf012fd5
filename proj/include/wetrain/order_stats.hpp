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

#ifndef WETRAIN_ORDER_STATS_HPP
#define WETRAIN_ORDER_STATS_HPP

// Expected order statistics of squared norms of i.i.d. CN(0, I_M) vectors.
//
// For N1 vectors v_i ~ CN(0, I_M) the squared norms are Erlang(M, 1). The gain
//     G_n(N1, M) = E[ n-th largest of ||v_1||^2, ..., ||v_N1||^2 ]
// is computed three ways:
//   - g_closed_form : alternating binomial sums over multinomial coefficients
//   - g_quadrature  : integral of the survival function of the n-th order statistic
//   - g_monte_carlo : direct sampling
// All rates are normalized to 1; for per-entry variance s the mean scales by s.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "error.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace wetrain
{
    enum class GainMethod
    {
        closed_form,
        quadrature,
        monte_carlo,
    };

    inline const char *to_string(GainMethod method) noexcept
    {
        switch (method)
        {
        case GainMethod::closed_form:
            return "closed_form";
        case GainMethod::quadrature:
            return "quadrature";
        case GainMethod::monte_carlo:
            return "monte_carlo";
        }
        return "unknown";
    }

    // Rank n (1 = largest) among N1 samples of dimension M.
    struct OrderStatQuery
    {
        int n = 1;
        int N1 = 1;
        int M = 1;

        void validate() const
        {
            if (N1 < 1 || M < 1 || n < 1 || n > N1)
            {
                std::ostringstream msg;
                msg << "invalid order-statistic query (n=" << n << ", N1=" << N1 << ", M=" << M
                    << "): need 1 <= n <= N1 and M >= 1";
                throw std::domain_error(msg.str());
            }
        }

        auto operator<=>(const OrderStatQuery &) const = default;
    };

    // Largest population and dimension served by g_closed_form. Beyond these the
    // alternating sums lose too many digits (population) or the composition
    // enumeration grows too large (dimension).
    inline constexpr int closed_form_max_population = 26;
    inline constexpr int closed_form_max_dimension = 8;

    // Quadrature targets
    inline constexpr double quadrature_tail_survival = 1e-16;
    inline constexpr double quadrature_relative_tolerance = 1e-9;

    // ------------------------------------------------------------------------
    // Distribution functions

    // CDF of Erlang(M, rate) at v.
    inline double erlang_cdf(double v, int M, double rate = 1.0)
    {
        if (!(v >= 0.0))
            throw std::domain_error("erlang_cdf: v must be non-negative");
        if (M < 1 || !(rate > 0.0))
            throw std::domain_error("erlang_cdf: need M >= 1 and rate > 0");
        if (v == 0.0)
            return 0.0;
        if (std::isinf(v))
            return 1.0;
        return boost::math::gamma_p(static_cast<double>(M), rate * v);
    }

    // 1 - erlang_cdf, without cancellation
    inline double erlang_survival(double v, int M, double rate = 1.0)
    {
        if (!(v >= 0.0))
            throw std::domain_error("erlang_survival: v must be non-negative");
        if (M < 1 || !(rate > 0.0))
            throw std::domain_error("erlang_survival: need M >= 1 and rate > 0");
        if (v == 0.0)
            return 1.0;
        if (std::isinf(v))
            return 0.0;
        return boost::math::gamma_q(static_cast<double>(M), rate * v);
    }

    namespace detail
    {
        inline double log_binomial(int n, int k)
        {
            return boost::math::lgamma(static_cast<double>(n) + 1.0) - boost::math::lgamma(static_cast<double>(k) + 1.0) -
                   boost::math::lgamma(static_cast<double>(n - k) + 1.0);
        }
    }

    // CDF of the n-th largest of N1 Erlang(M, 1) draws:
    //     sum_{k=0}^{n-1} C(N1,k) F^{N1-k} (1-F)^k
    // Every term is non-negative; terms are formed in log space so large
    // binomial coefficients never overflow.
    inline double ordered_cdf(const OrderStatQuery &q, double v)
    {
        q.validate();
        const double F = erlang_cdf(v, q.M);
        const double Fc = erlang_survival(v, q.M);
        if (F <= 0.0)
            return 0.0;
        if (Fc <= 0.0)
            return 1.0;
        const double log_F = std::log(F);
        const double log_Fc = std::log(Fc);
        double sum = 0.0;
        for (int k = 0; k < q.n; ++k)
            sum += std::exp(detail::log_binomial(q.N1, k) + (q.N1 - k) * log_F + k * log_Fc);
        return std::min(sum, 1.0);
    }

    // 1 - ordered_cdf: probability that at least n of the N1 draws exceed v,
    // i.e. the upper tail of Binomial(N1, 1-F), via the regularized incomplete beta.
    inline double ordered_survival(const OrderStatQuery &q, double v)
    {
        q.validate();
        const double a = q.n, b = q.N1 - q.n + 1;
        const double F = erlang_cdf(v, q.M);
        if (F <= 0.0)
            return 1.0;
        // evaluate through whichever of F, 1-F is small, so neither rounds to 1
        if (F < 0.5)
            return boost::math::ibetac(b, a, F);
        const double Fc = erlang_survival(v, q.M);
        if (Fc <= 0.0)
            return 0.0;
        return boost::math::ibeta(a, b, Fc);
    }

    namespace detail
    {
        // Complement of ordered_survival through the same incomplete beta
        inline double ordered_cdf_fast(const OrderStatQuery &q, double v)
        {
            const double a = q.n, b = q.N1 - q.n + 1;
            const double F = erlang_cdf(v, q.M);
            if (F <= 0.0)
                return 0.0;
            if (F < 0.5)
                return boost::math::ibeta(b, a, F);
            const double Fc = erlang_survival(v, q.M);
            if (Fc <= 0.0)
                return 1.0;
            return boost::math::ibetac(a, b, Fc);
        }

        // c_p = int_0^inf (e^{-v} sum_{m<M} v^m/m!)^p dv for p = 1..p_max, by
        // enumerating the compositions k_0 + ... + k_{M-1} = p of the multinomial
        // expansion. Compositions are grouped by s = sum m*k_m, after which
        //     c_p = sum_s w_s * p! * s! / p^{s+1},
        //     w_s = sum over compositions with that s of prod_m 1 / (k_m! (m!)^{k_m}).
        // All terms are positive.
        class MultinomialMoments
        {
        public:
            MultinomialMoments(int M, int p_max) : M_(M)
            {
                const int s_max = (M - 1) * p_max;
                log_factorial_.assign(static_cast<std::size_t>(std::max(s_max, p_max)) + 2, 0.0L);
                for (std::size_t i = 1; i < log_factorial_.size(); ++i)
                    log_factorial_[i] = log_factorial_[i - 1] + std::log(static_cast<long double>(i));

                c_.assign(static_cast<std::size_t>(p_max) + 1, 0.0L);
                for (int p = 1; p <= p_max; ++p)
                {
                    weight_by_s_.assign(static_cast<std::size_t>((M - 1) * p) + 1, 0.0L);
                    enumerate(0, p, 0, 0.0L);
                    long double c = 0.0L;
                    const long double log_p = std::log(static_cast<long double>(p));
                    for (std::size_t s = 0; s < weight_by_s_.size(); ++s)
                    {
                        if (weight_by_s_[s] == 0.0L)
                            continue;
                        c += weight_by_s_[s] * std::exp(log_factorial_[static_cast<std::size_t>(p)] + log_factorial_[s] -
                                                        static_cast<long double>(s + 1) * log_p);
                    }
                    c_[static_cast<std::size_t>(p)] = c;
                }
            }

            // c_p for 1 <= p <= p_max; c_0 is defined as 0 (the p = 0 terms of the
            // expansions cancel exactly)
            long double operator[](int p) const { return c_[static_cast<std::size_t>(p)]; }

        private:
            void enumerate(int m, int remaining, int s, long double log_weight)
            {
                if (m == M_ - 1)
                {
                    const int k = remaining;
                    log_weight -= log_factorial_[static_cast<std::size_t>(k)] + k * log_factorial_[static_cast<std::size_t>(m)];
                    weight_by_s_[static_cast<std::size_t>(s + m * k)] += std::exp(log_weight);
                    return;
                }
                for (int k = 0; k <= remaining; ++k)
                {
                    const long double w = log_weight - log_factorial_[static_cast<std::size_t>(k)] -
                                          k * log_factorial_[static_cast<std::size_t>(m)];
                    enumerate(m + 1, remaining - k, s + m * k, w);
                }
            }

            int M_;
            std::vector<long double> log_factorial_;
            std::vector<long double> weight_by_s_;
            std::vector<long double> c_;
        };

        // c_p tables depend only on M; built once per M up to the closed-form cap
        inline const MultinomialMoments &multinomial_moments(int M)
        {
            static std::mutex mutex;
            static std::map<int, MultinomialMoments> cache;
            std::lock_guard lock(mutex);
            auto it = cache.find(M);
            if (it == cache.end())
                it = cache.emplace(M, MultinomialMoments(M, closed_form_max_population)).first;
            return it->second;
        }

        inline long double binomial_ld(int n, int k)
        {
            long double r = 1.0L;
            for (int i = 1; i <= k; ++i)
                r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
            return r;
        }
    }

    inline bool closed_form_supported(const OrderStatQuery &q) noexcept
    {
        return q.N1 <= closed_form_max_population && q.M <= closed_form_max_dimension;
    }

    // Closed form. G_1 is the alternating sum
    //     G_1 = sum_{p=1}^{N1} C(N1,p) (-1)^{p+1} c_p
    // and lower ranks follow from G_{n+1} = G_n - Delta_n with
    //     Delta_n = int C(N1,n) F^{N1-n} (1-F)^n dv
    //             = C(N1,n) sum_{j=0}^{N1-n} C(N1-n,j) (-1)^j c_{n+j}.
    // Evaluated in long double. Throws std::domain_error above the
    // stability caps; use g_quadrature there.
    inline double g_closed_form(const OrderStatQuery &q)
    {
        q.validate();
        if (!closed_form_supported(q))
        {
            std::ostringstream msg;
            msg << "g_closed_form: (N1=" << q.N1 << ", M=" << q.M << ") exceeds the stable range (N1 <= "
                << closed_form_max_population << ", M <= " << closed_form_max_dimension << "); use g_quadrature";
            throw std::domain_error(msg.str());
        }
        const auto &c = detail::multinomial_moments(q.M);
        const int N1 = q.N1;

        long double g = 0.0L;
        for (int p = 1; p <= N1; ++p)
            g += ((p % 2 == 1) ? 1.0L : -1.0L) * detail::binomial_ld(N1, p) * c[p];

        for (int n = 1; n < q.n; ++n)
        {
            long double inner = 0.0L;
            for (int j = 0; j <= N1 - n; ++j)
                inner += ((j % 2 == 0) ? 1.0L : -1.0L) * detail::binomial_ld(N1 - n, j) * c[n + j];
            g -= detail::binomial_ld(N1, n) * inner;
        }
        return static_cast<double>(g);
    }

    // Integral of the survival function of the n-th order statistic over
    // [0, v_max], where v_max is where the survival falls below 1e-16. The flat
    // region where the survival is 1 to double precision is integrated exactly;
    // the rest goes to adaptive Gauss-Kronrod. Throws convergence_error when
    // the error estimate misses the 1e-9 relative target.
    inline double g_quadrature(const OrderStatQuery &q)
    {
        q.validate();
        auto survival = [&q](double v)
        { return ordered_survival(q, v); };
        auto cdf = [&q](double v)
        { return detail::ordered_cdf_fast(q, v); };

        // Upper limit: double from the Erlang mean, then bisect.
        double lo = 0.0;
        double hi = static_cast<double>(q.M);
        while (survival(hi) >= quadrature_tail_survival)
        {
            lo = hi;
            hi *= 2.0;
        }
        for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (survival(mid) >= quadrature_tail_survival ? lo : hi) = mid;
        }
        const double v_max = hi;

        // Plateau: largest v at which the CDF is still below 1e-17.
        double plateau = 0.0;
        if (cdf(0.5 * v_max) < 1e-17)
            plateau = 0.5 * v_max;
        {
            double a = plateau, b = v_max;
            for (int i = 0; i < 200 && b - a > 1e-9 * v_max; ++i)
            {
                const double mid = 0.5 * (a + b);
                (cdf(mid) < 1e-17 ? a : b) = mid;
            }
            plateau = a;
        }

        double error = 0.0;
        double l1 = 0.0;
        const double tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            survival, plateau, v_max, 20, 1e-13, &error, &l1);
        const double result = plateau + tail;
        if (!(error <= quadrature_relative_tolerance * std::abs(result)) || !std::isfinite(result))
        {
            std::ostringstream msg;
            msg << "g_quadrature: adaptive quadrature did not converge for (n=" << q.n << ", N1=" << q.N1
                << ", M=" << q.M << "), error estimate " << error << " on value " << result;
            throw convergence_error(msg.str());
        }
        return result;
    }

    struct MonteCarloGain
    {
        double gain = 0.0;
        double stderr_of_mean = 0.0;
    };

    // Monte Carlo estimate of G_1..G_N1 from the same draws: each trial draws N1
    // CN(0, I_M) vectors from its own (seed, trial) substream, sorts the squared
    // norms and records every rank.
    inline std::vector<MonteCarloGain> g_monte_carlo_ranks(int N1, int M, std::int64_t trials, std::uint64_t seed)
    {
        OrderStatQuery{1, N1, M}.validate();
        if (trials < 1)
            throw std::invalid_argument("g_monte_carlo: trials must be >= 1");

        const auto stats = run_trials(trials, static_cast<std::size_t>(N1), [&](std::int64_t trial, std::span<double> out)
                                      {
            auto engine = substream(seed, static_cast<std::uint64_t>(trial), Stream::order_stat);
            ComplexGaussian gaussian(1.0);
            for (int i = 0; i < N1; ++i)
            {
                double norm2 = 0.0;
                for (int m = 0; m < M; ++m)
                    norm2 += std::norm(gaussian(engine));
                out[static_cast<std::size_t>(i)] = norm2;
            }
            std::sort(out.begin(), out.end(), std::greater<>()); });

        std::vector<MonteCarloGain> result;
        result.reserve(stats.size());
        for (const auto &s : stats)
            result.push_back({s.mean, s.stderr_of_mean()});
        return result;
    }

    inline MonteCarloGain g_monte_carlo(const OrderStatQuery &q, std::int64_t trials, std::uint64_t seed)
    {
        q.validate();
        return g_monte_carlo_ranks(q.N1, q.M, trials, seed)[static_cast<std::size_t>(q.n - 1)];
    }

    // ------------------------------------------------------------------------
    // Memoized dispatcher

    struct GainEntry
    {
        double value = 0.0;
        GainMethod method = GainMethod::quadrature;
    };

    // Picks the evaluation route and computes one gain, without caching.
    inline GainEntry compute_gain(const OrderStatQuery &q)
    {
        q.validate();
        if (q.N1 == 1)
            return {static_cast<double>(q.M), GainMethod::closed_form};
        if (closed_form_supported(q))
            return {g_closed_form(q), GainMethod::closed_form};
        return {g_quadrature(q), GainMethod::quadrature};
    }

    // Cache of gains keyed by (n, N1, M). Lookups and inserts are guarded; a
    // value may be computed twice under contention, with identical results.
    class GainTable
    {
    public:
        GainEntry entry(const OrderStatQuery &q)
        {
            const Key key{q.n, q.N1, q.M};
            {
                std::shared_lock lock(mutex_);
                if (auto it = entries_.find(key); it != entries_.end())
                    return it->second;
            }
            const GainEntry computed = compute_gain(q);
            std::unique_lock lock(mutex_);
            return entries_.emplace(key, computed).first->second;
        }

        double get(const OrderStatQuery &q) { return entry(q).value; }

        // Records an externally computed value (e.g. a Monte Carlo estimate).
        void put(const OrderStatQuery &q, GainEntry e)
        {
            q.validate();
            std::unique_lock lock(mutex_);
            entries_[Key{q.n, q.N1, q.M}] = e;
        }

        std::size_t size() const
        {
            std::shared_lock lock(mutex_);
            return entries_.size();
        }

        void clear()
        {
            std::unique_lock lock(mutex_);
            entries_.clear();
        }

        // CSV columns n,N1,M,value,method in (n, N1, M) order.
        void write_csv(std::ostream &os) const
        {
            std::shared_lock lock(mutex_);
            os << "n,N1,M,value,method\n";
            char buf[64];
            for (const auto &[key, e] : entries_)
            {
                std::snprintf(buf, sizeof(buf), "%.11e", e.value);
                os << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << buf << ','
                   << to_string(e.method) << '\n';
            }
        }

    private:
        using Key = std::tuple<int, int, int>;
        mutable std::shared_mutex mutex_;
        std::map<Key, GainEntry> entries_;
    };

    inline GainTable &shared_gain_table()
    {
        static GainTable table;
        return table;
    }

    // G_n(N1, M) through the process-wide table
    inline double g(const OrderStatQuery &q) { return shared_gain_table().get(q); }

    inline double g(int n, int N1, int M) { return g(OrderStatQuery{n, N1, M}); }
}

#endif
