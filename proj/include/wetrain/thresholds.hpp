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

#ifndef WETRAIN_THRESHOLDS_HPP
#define WETRAIN_THRESHOLDS_HPP

// Tolerances for checking limit statements at finite size. The limits
// themselves carry no rate, so these numbers are engineering choices and are
// kept together here.

namespace wetrain::thresholds
{
    // solve_p1 against the large-M limit at M = 1e4 (value and E2 per band)
    inline constexpr double large_m_relative = 0.10;

    // Phase-I pilot energy relative to the optimal net energy, E1 N1 / qnet,
    // in the large-M regime
    inline constexpr double large_m_phase1_share = 0.05;

    // Lambert closed form against the swept large-N bound
    inline constexpr double lambert_vs_sweep = 0.05;

    // Relative growth of the optimal SISO value from N = 500 to N = 2000
    inline constexpr double saturation_growth = 0.02;

    // ideal_average(N) / (eta T Ps beta ln N) for M = N2 = 1
    inline constexpr double log_window_low = 0.9;
    inline constexpr double log_window_high = 1.5;
}

#endif
