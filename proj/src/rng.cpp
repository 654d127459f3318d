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
#include "ris/rng.hpp"

#include <cmath>

namespace ris
{
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    Rng Rng::derive(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t h = splitmix64(master_seed);
        for (auto p : path)
            h = splitmix64(h ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
        return Rng(h);
    }

    double Rng::uniform()
    {
        // 53 random mantissa bits
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double Rng::uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    double Rng::normal()
    {
        return normal_(engine_);
    }

    cplx Rng::complex_normal(double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }
}
