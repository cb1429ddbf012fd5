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

#ifndef WETRAIN_POLY_ROOTS_HPP
#define WETRAIN_POLY_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include "error.hpp"

namespace wetrain
{
    // Dense polynomials with ascending coefficients: c[0] + c[1] x + ...
    using Polynomial = std::vector<double>;

    inline Polynomial poly_multiply(std::span<const double> a, std::span<const double> b)
    {
        if (a.empty() || b.empty())
            return {};
        Polynomial r(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
        return r;
    }

    inline Polynomial poly_add(std::span<const double> a, std::span<const double> b)
    {
        Polynomial r(std::max(a.size(), b.size()), 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            r[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i)
            r[i] += b[i];
        return r;
    }

    inline Polynomial poly_scale(std::span<const double> a, double s)
    {
        Polynomial r(a.begin(), a.end());
        for (double &x : r)
            x *= s;
        return r;
    }

    struct PolyValue
    {
        double value = 0.0;
        double derivative = 0.0;
        double magnitude = 0.0; // sum |c_i| |x|^i, the rounding scale of `value`
    };

    // Horner evaluation of p and p' at x
    inline PolyValue poly_eval(std::span<const double> c, double x)
    {
        PolyValue r;
        const double ax = std::abs(x);
        for (std::size_t i = c.size(); i-- > 0;)
        {
            r.derivative = r.derivative * x + r.value;
            r.value = r.value * x + c[i];
            r.magnitude = r.magnitude * ax + std::abs(c[i]);
        }
        return r;
    }

    inline constexpr double root_residual_tolerance = 1e-10;

    // All real roots of the polynomial, ascending. Eigenvalues of the balanced
    // companion matrix (Eigen) give the initial estimates; eigenvalues that are
    // real or nearly real are Newton-polished until
    //     |p(x)| <= 1e-10 * sum_i |c_i| |x|^i,
    // which for |x| <= 1 is the plain 1e-10 * ||c||_1 criterion. Nearly-real
    // estimates that never reach the tolerance are complex pairs and are
    // dropped; an exactly real eigenvalue that fails to polish raises
    // polynomial_convergence_error.
    inline std::vector<double> poly_real_roots(std::span<const double> coeffs)
    {
        Polynomial c(coeffs.begin(), coeffs.end());
        while (!c.empty() && c.back() == 0.0)
            c.pop_back();
        if (c.empty())
            throw std::invalid_argument("poly_real_roots: zero polynomial");
        for (double x : c)
            if (!std::isfinite(x))
                throw std::invalid_argument("poly_real_roots: non-finite coefficient");
        if (c.size() == 1)
            return {};

        std::vector<std::pair<double, double>> estimates; // (real part, |imag|)
        if (c.size() == 2)
        {
            estimates.emplace_back(-c[0] / c[1], 0.0);
        }
        else
        {
            Eigen::VectorXd ev(static_cast<Eigen::Index>(c.size()));
            for (std::size_t i = 0; i < c.size(); ++i)
                ev[static_cast<Eigen::Index>(i)] = c[i];
            Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
            solver.compute(ev);
            for (Eigen::Index i = 0; i < solver.roots().size(); ++i)
            {
                const auto z = solver.roots()[i];
                estimates.emplace_back(z.real(), std::abs(z.imag()));
            }
        }

        std::vector<double> roots;
        for (const auto &[re, im] : estimates)
        {
            const double scale = std::max(1.0, std::abs(re));
            if (im > 1e-6 * scale)
                continue;

            double x = re;
            bool converged = false;
            for (int it = 0; it < 100; ++it)
            {
                const PolyValue pv = poly_eval(c, x);
                if (std::abs(pv.value) <= root_residual_tolerance * pv.magnitude)
                {
                    converged = true;
                    break;
                }
                if (pv.derivative == 0.0 || !std::isfinite(pv.derivative))
                    break;
                const double step = pv.value / pv.derivative;
                x -= step;
                if (!std::isfinite(x))
                    break;
            }
            if (!converged)
            {
                if (im == 0.0)
                {
                    std::ostringstream msg;
                    msg << "poly_real_roots: Newton polishing did not converge near x = " << re << " (degree "
                        << c.size() - 1 << ")";
                    throw polynomial_convergence_error(msg.str(), c);
                }
                continue;
            }
            roots.push_back(x);
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }
}

#endif
