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

#ifndef WETRAIN_ERROR_HPP
#define WETRAIN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wetrain
{
    // Invalid arguments throw std::invalid_argument or std::domain_error.
    // The types below cover numerical failures that callers may want to tell apart.

    // An iterative scheme (quadrature, root polishing) ran out of budget.
    class convergence_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Root polishing failed; carries the polynomial (ascending coefficients).
    class polynomial_convergence_error : public convergence_error
    {
    public:
        polynomial_convergence_error(const std::string &what, std::vector<double> coefficients)
            : convergence_error(what), coefficients_(std::move(coefficients)) {}

        const std::vector<double> &coefficients() const noexcept { return coefficients_; }

    private:
        std::vector<double> coefficients_;
    };

    // One or more per-population sub-problems of the training optimizer failed.
    class solver_error : public std::runtime_error
    {
    public:
        solver_error(const std::string &what, std::vector<int> failed_populations)
            : std::runtime_error(what), failed_populations_(std::move(failed_populations)) {}

        const std::vector<int> &failed_populations() const noexcept { return failed_populations_; }

    private:
        std::vector<int> failed_populations_;
    };
}

#endif
