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
#ifndef RIS_RNG_HPP
#define RIS_RNG_HPP

#include "ris/types.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ris
{
    // 64-bit mixing function used to derive independent child seeds
    std::uint64_t splitmix64(std::uint64_t x);

    // Seeded random stream. Child streams are derived by hashing a master seed with
    // a path of counters (e.g. trial index, stream purpose), so any draw can be
    // reproduced without replaying earlier draws.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed);

        static Rng derive(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path);

        std::uint64_t seed() const { return seed_; }
        double uniform();                       // [0, 1)
        double uniform(double lo, double hi);   // [lo, hi)
        double uniform(const Range &r) { return uniform(r.lo, r.hi); }
        double normal();                        // N(0, 1)
        cplx complex_normal(double variance);   // CN(0, variance)

        std::mt19937_64 &engine() { return engine_; }

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_;
    };
}

#endif
