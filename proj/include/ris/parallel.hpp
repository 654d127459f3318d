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
#ifndef RIS_PARALLEL_HPP
#define RIS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace ris
{
    // Resolves a worker count: 0 means hardware concurrency. The result is capped by
    // the RIS_SIM_THREADS environment variable when it is set to a positive integer.
    unsigned resolve_workers(unsigned requested = 0);

    // Runs body(i) for i in [0, n) on up to `workers` threads. Work items are claimed
    // dynamically; callers must write results to slots indexed by i so the outcome does
    // not depend on scheduling. The first exception thrown by any item is rethrown.
    void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &body);
}

#endif
