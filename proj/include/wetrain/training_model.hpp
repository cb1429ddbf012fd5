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

#ifndef WETRAIN_TRAINING_MODEL_HPP
#define WETRAIN_TRAINING_MODEL_HPP

// Analytic statistics of the two-phase training protocol.
//
// Phase I: the receiver sends a pilot of energy E1 on N1 bands; the
// transmitter ranks them by received energy and keeps the N2 strongest.
// Phase II: pilot energy E2[n-1] on the rank-n band feeds an LMMSE estimate
// used for maximum-ratio energy beamforming.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "order_stats.hpp"
#include "system_params.hpp"

namespace wetrain
{
    // E||h_[n]||^2 after phase-I selection of rank n among N1 bands:
    //     R_n = (beta^2 E1 G_n(N1,M) + beta N0 M) / (beta E1 + N0)
    // Moves monotonically from beta M at E1 = 0 to beta G_n as E1 grows. Upward
    // in general; downward for the lowest ranks of small populations, where G_n < M.
    inline double expected_power_rn(int n, int N1, double E1, const SystemParams &p)
    {
        if (n < 1 || n > p.N2 || N1 < p.N2)
            throw std::domain_error("expected_power_rn: need 1 <= n <= N2 <= N1");
        if (!(E1 >= 0.0))
            throw std::domain_error("expected_power_rn: E1 must be non-negative");
        if (E1 == 0.0)
            return p.beta * p.M; // no ranking information; G_n is not needed
        const double G = g(n, N1, p.M);
        if (std::isinf(E1))
            return p.beta * G;
        return (p.beta * p.beta * E1 * G + p.beta * p.N0 * p.M) / (p.beta * E1 + p.N0);
    }

    struct LmmseStats
    {
        double coeff = 0.0;      // estimator gain on the phase-II observation
        double mse = 0.0;        // E||h - h_hat||^2
        double est_power = 0.0;  // E||h_hat||^2
    };

    // LMMSE estimate of a band with prior power Rn from a pilot of energy E2n.
    // mse + est_power == Rn up to rounding.
    inline LmmseStats lmmse_stats(double Rn, double E2n, const SystemParams &p)
    {
        if (!(Rn > 0.0))
            throw std::domain_error("lmmse_stats: Rn must be positive");
        if (!(E2n >= 0.0))
            throw std::domain_error("lmmse_stats: E2n must be non-negative");
        const double noise = p.N0 * p.M;
        if (std::isinf(E2n))
            return {0.0, 0.0, Rn};
        const double denom = E2n * Rn + noise;
        LmmseStats s;
        s.coeff = std::sqrt(E2n) * Rn / denom;
        s.mse = noise * Rn / denom;
        s.est_power = E2n * Rn * Rn / denom;
        return s;
    }

    // Average harvested energy of a plan:
    //     eta T Ps sum_n R_n (1 - (M-1) N0 / (E2n R_n + N0 M))
    // evaluated as R_n (E2n R_n + N0) / (E2n R_n + N0 M), which avoids the
    // cancellation at small E2n.
    inline double qbar(const TrainingPlan &plan, const SystemParams &p)
    {
        p.validate();
        plan.validate(p);
        double sum = 0.0;
        for (int n = 1; n <= p.N2; ++n)
        {
            const double R = expected_power_rn(n, plan.N1, plan.E1, p);
            const double E2 = plan.E2[static_cast<std::size_t>(n - 1)];
            sum += R * (E2 * R + p.N0) / (E2 * R + p.N0 * p.M);
        }
        return p.harvest_scale() * sum;
    }

    // Net harvested energy: qbar minus all pilot energy
    inline double qnet(const TrainingPlan &plan, const SystemParams &p)
    {
        return qbar(plan, p) - plan.training_cost();
    }

    // Two-way effective SNR, eta T Ps beta^2 / N0
    inline double esnr(const SystemParams &p)
    {
        if (!(p.N0 > 0.0))
            throw std::domain_error("esnr: N0 must be positive");
        return p.eta * p.T * p.Ps * p.beta * p.beta / p.N0;
    }

    // Channel power above which phase-II training pays off,
    //     alpha = sqrt(N0) M / sqrt(eta T Ps (M-1)).
    // +inf for M = 1.
    inline double alpha_threshold(const SystemParams &p)
    {
        if (p.M == 1)
            return std::numeric_limits<double>::infinity();
        return std::sqrt(p.N0) * p.M / std::sqrt(p.harvest_scale() * (p.M - 1));
    }
}

#endif
