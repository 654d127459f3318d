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
#ifndef RIS_RISCONFIG_HPP
#define RIS_RISCONFIG_HPP

#include "ris/types.hpp"

#include <vector>

namespace ris
{
    struct RisConfiguration
    {
        CVector phi; // unit-modulus entries
        CVector w;   // unit norm
    };

    // rho |w^H V phi|^2 / sigma2
    double snr(const CMatrix &V, const CVector &phi, const CVector &w, double rho_mw, double sigma2_mw);

    // exp(j arg(x)) entrywise, with arg(0) := 0
    CVector phase_align(const CVector &x);

    struct AltOptResult
    {
        RisConfiguration config;
        // |w^H V phi|^2 (the SNR for rho = sigma2) after every half-step
        std::vector<double> snr_trace;
        int iterations = 0;
    };

    // Alternates phi = exp(j arg(V^H w)) and w = V phi / ||V phi|| until max_iter full
    // iterations or a relative change below tol. Throws std::domain_error if V phi = 0.
    AltOptResult alt_optimize(const CMatrix &V, const CVector &w_init, int max_iter = 50, double tol = 1e-8);

    // Unit-norm leading left singular vector of V (the default alternating start point);
    // falls back to the first standard basis vector when V = 0.
    CVector leading_left_singular_vector(const CMatrix &V);

    // phi_tx (.) phi_rx
    CVector split_config(const CVector &phi_tx, const CVector &phi_rx);

    // w = u1, phi = (sqrt(M) v1) (.) exp(-j arg(h)); optimal for a rank-one BS-RIS channel
    RisConfiguration los_closed_form(const CVector &u1, const CVector &v1, const CVector &h);

    // exp(j arg(v_hat)), zero entries mapped to phase 0
    CVector config_from_estimate(const CVector &v_hat);
}

#endif
