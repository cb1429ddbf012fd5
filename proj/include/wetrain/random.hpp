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

#ifndef WETRAIN_RANDOM_HPP
#define WETRAIN_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace wetrain
{
    // SplitMix64 (Steele, Lea & Flood). One 64-bit word of state, so a fresh
    // generator per (seed, trial, stream) costs nothing to set up.
    // Satisfies std::uniform_random_bit_generator.
    class SplitMix64
    {
    public:
        using result_type = std::uint64_t;

        explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

        static constexpr result_type min() noexcept { return 0; }
        static constexpr result_type max() noexcept { return ~result_type{0}; }

        result_type operator()() noexcept
        {
            std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }

    private:
        std::uint64_t state_;
    };

    // Stafford variant 13 finalizer
    constexpr std::uint64_t mix64(std::uint64_t x) noexcept
    {
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Named random streams inside one trial
    enum class Stream : std::uint64_t
    {
        channel = 0,
        phase1_noise = 1,
        phase2_noise = 2,
        order_stat = 3,
    };

    // Generator for one trial. Depends only on (seed, trial, stream), never on
    // which worker runs the trial or in which order.
    inline SplitMix64 substream(std::uint64_t seed, std::uint64_t trial, Stream stream) noexcept
    {
        const std::uint64_t key = mix64(seed + 0x632BE59BD9B4E019ULL * (static_cast<std::uint64_t>(stream) + 1));
        return SplitMix64(mix64(key ^ mix64(trial + 0xD1B54A32D192ED03ULL)));
    }

    // Draws CN(0, variance): independent real and imaginary parts, each N(0, variance/2).
    // Boost's ziggurat normal; libstdc++'s polar method is several times slower here.
    class ComplexGaussian
    {
    public:
        explicit ComplexGaussian(double variance = 1.0) : normal_(0.0, std::sqrt(0.5 * variance)) {}

        template <class Engine>
        std::complex<double> operator()(Engine &engine)
        {
            const double re = normal_(engine);
            const double im = normal_(engine);
            return {re, im};
        }

    private:
        boost::random::normal_distribution<double> normal_;
    };
}

#endif
