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

#ifndef WETRAIN_ASYMPTOTICS_HPP
#define WETRAIN_ASYMPTOTICS_HPP

// Large-M and large-N behaviour of the two-phase design.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "order_stats.hpp"
#include "system_params.hpp"
#include "training_model.hpp"

namespace wetrain
{
    // Principal branch of the Lambert W function, w e^w = z for z >= -1/e.
    // Halley iteration from a logarithmic guess, or from the branch-point
    // series p = sqrt(2(e z + 1)) near -1/e.
    inline double lambert_w0(double z)
    {
        constexpr double inv_e = 1.0 / std::numbers::e;
        if (std::isnan(z))
            throw std::domain_error("lambert_w0: NaN argument");
        if (z < -inv_e)
        {
            // allow the rounding of -1/e itself
            if (z < -inv_e * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
                throw std::domain_error("lambert_w0: argument below -1/e");
            return -1.0;
        }
        if (z == 0.0)
            return 0.0;
        if (std::isinf(z))
            return z;

        double w;
        if (z < -0.25)
        {
            const double q = std::max(0.0, 2.0 * (std::numbers::e * z + 1.0));
            const double s = std::sqrt(q);
            w = -1.0 + s - s * s / 3.0 + 11.0 / 72.0 * s * s * s;
        }
        else if (z < 3.0)
        {
            w = std::log1p(z);
        }
        else
        {
            const double l = std::log(z);
            w = l - std::log(l) + std::log(l) / l;
        }
        if (w <= -1.0)
            w = -1.0 + 1e-12;

        for (int it = 0; it < 64; ++it)
        {
            const double ew = std::exp(w);
            const double f = w * ew - z;
            const double wp1 = w + 1.0;
            if (wp1 == 0.0)
                break;
            const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
            const double step = f / denom;
            const double next = std::max(w - step, -1.0);
            if (std::abs(next - w) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w)))
            {
                w = next;
                break;
            }
            w = next;
        }
        return w;
    }

    // Large-M limit of the optimal design: no phase-I training, equal phase-II
    // pilots sqrt(eta T Ps N0 M), and net energy eta T N2 Ps beta M.
    struct LargeMLimit
    {
        TrainingPlan plan;
        double qnet = 0.0;
    };

    inline LargeMLimit large_m_plan(const SystemParams &p)
    {
        p.validate();
        LargeMLimit r;
        r.plan.N1 = p.N2;
        r.plan.E1 = 0.0;
        r.plan.E2.assign(static_cast<std::size_t>(p.N2), std::sqrt(p.harvest_scale() * p.N0 * p.M));
        r.qnet = p.harvest_scale() * p.N2 * p.beta * p.M;
        return r;
    }

    // Perfect-CSI average over the N2 strongest of `bands` sub-bands,
    //     eta T Ps beta sum_{n<=N2} G_n(bands, M)
    inline double ideal_average(const SystemParams &p, int bands)
    {
        p.validate();
        if (bands < p.N2)
            throw std::domain_error("ideal_average: need at least N2 bands");
        double sum = 0.0;
        for (int n = 1; n <= p.N2; ++n)
            sum += g(n, bands, p.M);
        return p.harvest_scale() * p.beta * sum;
    }

    inline double ideal_average(const SystemParams &p) { return ideal_average(p, p.N); }

    enum class BoundRegime
    {
        large_M,
        large_N,
    };

    inline const char *to_string(BoundRegime r) noexcept { return r == BoundRegime::large_M ? "large_M" : "large_N"; }

    struct BoundReport
    {
        double bound = 0.0;
        BoundRegime regime = BoundRegime::large_N;
        SystemParams inputs;

        // large-N only
        bool trivial = true;          // E1 = 0 optimal for every N1 <= N
        int best_N1 = 0;
        double best_E1 = 0.0;
        double lambert_form = 0.0;    // closed approximation of the swept value
        double lambert_N1 = 0.0;      // e^W(Gamma N2 M), its relaxed maximizer

        std::string branch() const { return trivial ? "trivial" : "nontrivial"; }
    };

    inline BoundReport large_m_bound(const SystemParams &p)
    {
        p.validate();
        BoundReport r;
        r.regime = BoundRegime::large_M;
        r.inputs = p;
        r.bound = large_m_plan(p).qnet;
        r.best_N1 = p.N2;
        return r;
    }

    // Upper bound on the optimal net energy that stays bounded in N. Every
    // rank is relaxed to N2 M copies of the SISO maximum, R_n <= beta M H_N1
    // with H the harmonic number, giving per N1 the concave problem
    //     max_E1  eta T Ps beta N2 M (beta E1 H + N0) / (beta E1 + N0) - E1 N1.
    // Its optimum is swept over N2 <= N1 <= N with exact harmonic numbers.
    inline BoundReport large_n_upper_bound(const SystemParams &p)
    {
        p.validate();
        const double base = p.harvest_scale() * p.N2 * p.M * p.beta;
        const double k = esnr(p) * p.N2 * p.M;

        BoundReport r;
        r.regime = BoundRegime::large_N;
        r.inputs = p;
        r.bound = base;
        r.best_N1 = p.N2;

        double H = 0.0;
        for (int i = 1; i < p.N2; ++i)
            H += 1.0 / i;
        for (int N1 = p.N2; N1 <= p.N; ++N1)
        {
            H += 1.0 / N1;
            const double gain = H - 1.0;
            const double cost = N1 / k;
            if (!(gain > cost))
                continue;
            const double d = std::sqrt(gain) - std::sqrt(cost);
            const double value = base * (1.0 + d * d);
            if (value > r.bound)
            {
                r.bound = value;
                r.trivial = false;
                r.best_N1 = N1;
                r.best_E1 = std::max(0.0, std::sqrt(p.harvest_scale() * p.N2 * p.M * p.N0 * gain / N1) - p.N0 / p.beta);
            }
        }

        const double w = lambert_w0(k);
        const double d = std::sqrt(w) - 1.0 / std::sqrt(w);
        r.lambert_form = base * (1.0 + d * d);
        r.lambert_N1 = std::exp(w);
        return r;
    }
}

#endif
