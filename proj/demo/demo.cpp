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

// Optimal two-phase training at the reference deployment, checked by simulation.

#include <cstdio>

#include <wetrain/wetrain.hpp>

int main()
{
    using namespace wetrain;

    const SystemParams p = ism_reference_params(10, 5e-5);
    std::printf("M=%d N=%d N2=%d T=%g s, two-way ESNR %.3g\n", p.M, p.N, p.N2, p.T, esnr(p));

    const Solution s = solve_p1(p);
    std::printf("train N1=%d bands with E1=%.4g J, then E2 from %.4g J (rank 1) to %.4g J (rank %d)\n", s.plan.N1,
                s.plan.E1, s.plan.E2.front(), s.plan.E2.back(), p.N2);
    std::printf("net harvested power %.4g W (training %.3g%% of the harvest)\n", s.qnet_star / p.T,
                100.0 * s.plan.training_cost() / qbar(s.plan, p));

    const EnergyReport r = run_two_phase(s.plan, p, 4096, 7);
    std::printf("simulated %.4g +- %.2g W over %lld trials\n", r.mean_qnet / p.T, r.standard_error / p.T,
                static_cast<long long>(r.trials));

    std::printf("perfect CSI %.4g W, no CSI %.4g W\n", ideal_average(p) / p.T, qnet(TrainingPlan::zero(p), p) / p.T);

    const BoundReport b = large_n_upper_bound(p);
    std::printf("large-N bound %.4g W (%s branch), closed form %.4g W\n", b.bound / p.T, b.branch().c_str(),
                b.lambert_form / p.T);
    return 0;
}
