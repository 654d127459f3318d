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
#include "ris/risconfig.hpp"

#include <cmath>
#include <stdexcept>

namespace ris
{
    double snr(const CMatrix &V, const CVector &phi, const CVector &w, double rho_mw, double sigma2_mw)
    {
        if (!(sigma2_mw > 0.0))
            throw std::invalid_argument("snr: noise variance must be positive");
        if (phi.size() != V.cols() || w.size() != V.rows())
            throw std::invalid_argument("snr: dimension mismatch");
        const cplx g = w.dot(V * phi); // w^H V phi
        return rho_mw * std::norm(g) / sigma2_mw;
    }

    CVector phase_align(const CVector &x)
    {
        CVector out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out[i] = (x[i] == cplx(0.0, 0.0)) ? cplx(1.0, 0.0) : std::polar(1.0, std::arg(x[i]));
        return out;
    }

    AltOptResult alt_optimize(const CMatrix &V, const CVector &w_init, int max_iter, double tol)
    {
        if (max_iter < 1)
            throw std::invalid_argument("alt_optimize: max_iter must be at least 1");
        if (w_init.size() != V.rows() || std::abs(w_init.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("alt_optimize: w_init must be a unit-norm N-vector");

        AltOptResult r;
        r.config.w = w_init;
        double previous = -1.0;
        for (int it = 1; it <= max_iter; ++it)
        {
            r.config.phi = phase_align(V.adjoint() * r.config.w);
            const CVector Vphi = V * r.config.phi;
            r.snr_trace.push_back(std::norm(r.config.w.dot(Vphi)));

            const double norm = Vphi.norm();
            if (!(norm > 0.0))
                throw std::domain_error("alt_optimize: V phi vanished");
            r.config.w = Vphi / norm;
            const double gain = norm * norm; // |w^H V phi|^2 with w along V phi
            r.snr_trace.push_back(gain);
            r.iterations = it;

            if (previous > 0.0 && std::abs(gain - previous) <= tol * previous)
                break;
            previous = gain;
        }
        return r;
    }

    CVector leading_left_singular_vector(const CMatrix &V)
    {
        CVector e = CVector::Zero(V.rows());
        if (V.rows() == 0)
            throw std::invalid_argument("leading_left_singular_vector: empty matrix");
        e[0] = 1.0;
        const CMatrix gram = V * V.adjoint();
        if (gram.norm() == 0.0)
            return e;
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram);
        if (solver.info() != Eigen::Success)
            return e;
        CVector u = solver.eigenvectors().col(V.rows() - 1);
        return u / u.norm();
    }

    CVector split_config(const CVector &phi_tx, const CVector &phi_rx)
    {
        if (phi_tx.size() != phi_rx.size())
            throw std::invalid_argument("split_config: length mismatch");
        return (phi_tx.array() * phi_rx.array()).matrix();
    }

    RisConfiguration los_closed_form(const CVector &u1, const CVector &v1, const CVector &h)
    {
        if (v1.size() != h.size())
            throw std::invalid_argument("los_closed_form: v1 and h lengths differ");
        const double sqrt_m = std::sqrt(static_cast<double>(v1.size()));
        const CVector phi_tx = v1 * sqrt_m;
        const CVector phi_rx = phase_align(h).conjugate();
        return {split_config(phi_tx, phi_rx), u1};
    }

    CVector config_from_estimate(const CVector &v_hat)
    {
        return phase_align(v_hat);
    }
}
