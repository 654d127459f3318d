// SPDX-License-Identifier: Apache-2.0
//
// ris-sim: reduced-subspace channel estimation for reconfigurable intelligent surfaces
// Copyright (C) 2026 The ris-sim Authors
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
#include "ris/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ris
{
    unsigned resolve_workers(unsigned requested)
    {
        unsigned n = requested;
        if (n == 0)
            n = std::max(1u, std::thread::hardware_concurrency());
        if (const char *env = std::getenv("RIS_SIM_THREADS"))
        {
            try
            {
                const long cap = std::stol(env);
                if (cap > 0)
                    n = std::min<unsigned>(n, static_cast<unsigned>(cap));
            }
            catch (const std::exception &)
            {
                // ignore malformed values
            }
        }
        return std::max(1u, n);
    }

    void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &body)
    {
        if (n == 0)
            return;
        workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
        if (workers == 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;

        auto worker = [&]()
        {
            while (!failed.load())
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    failed = true;
                }
            }
        };

        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        pool.clear(); // joins

        if (error)
            std::rethrow_exception(error);
    }
}
