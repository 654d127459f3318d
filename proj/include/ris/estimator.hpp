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
#ifndef RIS_ESTIMATOR_HPP
#define RIS_ESTIMATOR_HPP

#include "ris/channel.hpp"
#include "ris/subspace.hpp"

#include <memory>
#include <optional>
#include <stdexcept>

namespace ris
{
    // Raised when an estimator cannot invert the pilot signal (zero pilot power)
    class EstimationError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    enum class PilotKind
    {
        reduced_subspace,
        full_ls
    };

    // RIS configuration sequence Phi (M x P) plus pilot symbols x_t. Neither kind
    // stores Phi densely: reduced-subspace plans keep (basis, phi_tx) and full-LS plans
    // use the M-point DFT, whose products are evaluated with an FFT.
    class PilotPlan
    {
    public:
        PilotKind kind() const { return kind_; }
        double rho_mw() const { return rho_mw_; }
        int length() const { return static_cast<int>(symbols_.size()); } // P
        int elements() const { return m_; }                             // M
        const CVector &pilot_symbols() const { return symbols_; }
        void set_pilot_symbols(const CVector &x);
        const BasisSet *basis() const { return basis_.get(); }
        const CVector &phi_tx() const { return phi_tx_; }

        CVector configuration(int t) const; // phi_t
        CMatrix phi() const;                // dense M x P, for inspection

        CVector apply(const CVector &c) const;         // Phi c
        CVector apply_adjoint(const CVector &x) const; // Phi^H x

        friend PilotPlan rsls_pilot_plan(std::shared_ptr<const BasisSet> basis, const CVector &phi_tx, double rho_mw);
        friend PilotPlan ls_pilot_plan(int m, double rho_mw);

    private:
        PilotPlan() = default;

        PilotKind kind_ = PilotKind::full_ls;
        double rho_mw_ = 0.0;
        int m_ = 0;
        CVector symbols_;
        std::shared_ptr<const BasisSet> basis_;
        CVector phi_tx_;
    };

    // phi_t = phi_tx (.) conj(b_t) for every basis vector; P = eta, x_t = sqrt(rho).
    // conj(b_t) is the steering vector at the mirrored pair (-azimuth, -elevation). The
    // cascaded vector tilde_v1 = conj(lambda1) diag(conj(h)) v1 carries conj(h), so these
    // configurations span it exactly whenever h lies in the span of the basis.
    PilotPlan rsls_pilot_plan(std::shared_ptr<const BasisSet> basis, const CVector &phi_tx, double rho_mw);

    // Phi(m, t) = exp(-j 2 pi (m-1)(t-1) / M); P = M, x_t = sqrt(rho)
    PilotPlan ls_pilot_plan(int m, double rho_mw);

    struct RxPilots
    {
        std::optional<CVector> combined;       // y, reduced-subspace plans
        std::optional<CMatrix> full;           // Y, full-LS plans
        std::optional<CVector> combined_noise; // the n~ realization added to y
        double noise_var_mw = 0.0;
    };

    struct Estimate
    {
        CVector v_hat;
        CMatrix V_hat;
    };

    // Reduced-subspace: y_t = x_t w^H V phi_t + n~_t with n~_t ~ CN(0, sigma2); w must be
    // given and unit norm. Full-LS: Y = V Phi X + N; w must be absent.
    RxPilots simulate_pilots(const CascadedChannel &V, const PilotPlan &plan, const std::optional<CVector> &w,
                             double sigma2_mw, Rng &rng);

    // v_hat = Phi conj(y / x) / M, i.e. Phi y^* / (M sqrt(rho)) for constant pilots
    CVector rsls_estimate(const RxPilots &rx, const PilotPlan &plan);

    // V_hat = w v_hat^H
    CMatrix assemble_cascaded(const CVector &w, const CVector &v_hat);

    // V_hat = Y X^-1 Phi^H / M
    CMatrix ls_estimate(const RxPilots &rx, const PilotPlan &plan);
}

#endif
