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

#ifndef WETRAIN_PARALLEL_HPP
#define WETRAIN_PARALLEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace wetrain
{
    // Number of worker threads. WETRAIN_THREADS overrides the hardware count.
    inline unsigned worker_count()
    {
        if (const char *env = std::getenv("WETRAIN_THREADS"))
        {
            const long n = std::strtol(env, nullptr, 10);
            if (n >= 1)
                return static_cast<unsigned>(n);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    // Calls fn(i) for i in [0, count). Indices are handed out in a fixed stride
    // pattern, so any per-index output is identical for every thread count.
    // The first exception thrown by a worker is rethrown after all workers join.
    template <class Fn>
    void parallel_for(std::size_t count, Fn &&fn)
    {
        const std::size_t workers = std::min<std::size_t>(worker_count(), count);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                fn(i);
            return;
        }

        std::exception_ptr first_error;
        std::mutex error_mutex;
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w)
            {
                pool.emplace_back([&, w]
                                  {
                    try
                    {
                        for (std::size_t i = w; i < count; i += workers)
                            fn(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(error_mutex);
                        if (!first_error)
                            first_error = std::current_exception();
                    } });
            }
        }
        if (first_error)
            std::rethrow_exception(first_error);
    }

    // Streaming mean/variance (Welford), mergeable with Chan's update.
    struct RunningStats
    {
        std::int64_t count = 0;
        double mean = 0.0;
        double m2 = 0.0;

        void add(double x) noexcept
        {
            ++count;
            const double delta = x - mean;
            mean += delta / static_cast<double>(count);
            m2 += delta * (x - mean);
        }

        void merge(const RunningStats &other) noexcept
        {
            if (other.count == 0)
                return;
            if (count == 0)
            {
                *this = other;
                return;
            }
            const double n_a = static_cast<double>(count);
            const double n_b = static_cast<double>(other.count);
            const double n = n_a + n_b;
            const double delta = other.mean - mean;
            mean += delta * n_b / n;
            m2 += other.m2 + delta * delta * n_a * n_b / n;
            count += other.count;
        }

        double variance() const noexcept { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
        double stderr_of_mean() const noexcept { return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0; }
    };

    inline constexpr std::int64_t trials_per_block = 1024;

    // Runs `trials` independent trials, each writing `width` values through
    // trial_fn(trial_index, std::span<double> out). Trials are grouped into
    // fixed blocks whose statistics are merged in block order, so the result
    // is bit-identical regardless of thread count.
    template <class TrialFn>
    std::vector<RunningStats> run_trials(std::int64_t trials, std::size_t width, TrialFn &&trial_fn)
    {
        const std::int64_t blocks = (trials + trials_per_block - 1) / trials_per_block;
        std::vector<std::vector<RunningStats>> block_stats(static_cast<std::size_t>(blocks),
                                                           std::vector<RunningStats>(width));
        parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b)
                     {
            std::vector<double> out(width);
            auto &stats = block_stats[b];
            const std::int64_t first = static_cast<std::int64_t>(b) * trials_per_block;
            const std::int64_t last = std::min(trials, first + trials_per_block);
            for (std::int64_t t = first; t < last; ++t)
            {
                std::fill(out.begin(), out.end(), 0.0);
                trial_fn(t, std::span<double>(out));
                for (std::size_t k = 0; k < width; ++k)
                    stats[k].add(out[k]);
            } });

        std::vector<RunningStats> total(width);
        for (const auto &stats : block_stats)
            for (std::size_t k = 0; k < width; ++k)
                total[k].merge(stats[k]);
        return total;
    }
}

#endif
