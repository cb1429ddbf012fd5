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

#ifndef WETRAIN_SYSTEM_PARAMS_HPP
#define WETRAIN_SYSTEM_PARAMS_HPP

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wetrain
{
    // Physical constants of the link. SI units throughout: watts, joules, seconds.
    struct SystemParams
    {
        int M = 1;          // transmit antennas at the energy transmitter
        int N = 1;          // available sub-bands
        int N2 = 1;         // sub-bands used for energy transfer (total power / per-band power)
        double Ps = 0.0;    // per-band transmit power [W]
        double eta = 0.0;   // RF-to-DC conversion efficiency, 0 < eta <= 1
        double T = 0.0;     // block length [s]
        double beta = 0.0;  // large-scale power gain per antenna
        double N0 = 0.0;    // noise energy per matched-filter pilot observation [J]

        void validate() const
        {
            std::ostringstream err;
            if (M < 1)
                err << "M must be >= 1; ";
            if (N < 1)
                err << "N must be >= 1; ";
            if (N2 < 1 || N2 > N)
                err << "N2 must satisfy 1 <= N2 <= N; ";
            if (!(Ps > 0.0) || !std::isfinite(Ps))
                err << "Ps must be positive; ";
            if (!(eta > 0.0) || eta > 1.0)
                err << "eta must lie in (0, 1]; ";
            if (!(T > 0.0) || !std::isfinite(T))
                err << "T must be positive; ";
            if (!(beta > 0.0) || !std::isfinite(beta))
                err << "beta must be positive; ";
            if (!(N0 > 0.0) || !std::isfinite(N0))
                err << "N0 must be positive; ";
            if (!err.str().empty())
                throw std::invalid_argument("invalid SystemParams: " + err.str());
        }

        // eta * T * Ps, the energy harvested per unit channel power on one band
        double harvest_scale() const noexcept { return eta * T * Ps; }

        bool operator==(const SystemParams &) const = default;
    };

    // A two-phase training design: N1 bands trained with E1 each, then the
    // N2 strongest re-trained with E2[rank-1].
    struct TrainingPlan
    {
        int N1 = 1;
        double E1 = 0.0;
        std::vector<double> E2;

        void validate(const SystemParams &p) const
        {
            std::ostringstream err;
            if (N1 < p.N2 || N1 > p.N)
                err << "N1 must satisfy N2 <= N1 <= N; ";
            if (!(E1 >= 0.0) || !std::isfinite(E1))
                err << "E1 must be a finite non-negative energy; ";
            if (E2.size() != static_cast<std::size_t>(p.N2))
                err << "E2 must hold exactly N2 energies; ";
            for (double e : E2)
                if (!(e >= 0.0) || !std::isfinite(e))
                {
                    err << "E2 entries must be finite non-negative energies; ";
                    break;
                }
            if (!err.str().empty())
                throw std::invalid_argument("invalid TrainingPlan: " + err.str());
        }

        // Total pilot energy spent by the receiver
        double training_cost() const noexcept
        {
            double cost = E1 * N1;
            for (double e : E2)
                cost += e;
            return cost;
        }

        static TrainingPlan zero(const SystemParams &p) { return {p.N2, 0.0, std::vector<double>(static_cast<std::size_t>(p.N2), 0.0)}; }
    };

    // Unit conversions used at the configuration boundary
    inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    // Reference deployment: 902-928 MHz ISM band in 866 sub-bands of 30 kHz,
    // 60 mW per band under a 1 W total cap (N2 = 16), eta = 0.8, 60 dB path
    // loss and a -160 dBm/Hz noise density taken as the per-observation noise
    // energy of a unit-energy matched filter.
    inline SystemParams ism_reference_params(int M, double T)
    {
        SystemParams p;
        p.M = M;
        p.N = 866;
        p.N2 = 16;
        p.Ps = 0.06;
        p.eta = 0.8;
        p.T = T;
        p.beta = db_to_linear(-60.0);
        p.N0 = dbm_to_watts(-160.0);
        return p;
    }
}

#endif
