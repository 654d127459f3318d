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
#include "ris/estimator.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <vector>

namespace ris
{
    namespace
    {
        constexpr double unit_tol = 1e-9;

        void require_unit_modulus(const CVector &x, const char *what)
        {
            for (Eigen::Index i = 0; i < x.size(); ++i)
                if (std::abs(std::abs(x[i]) - 1.0) > unit_tol)
                    throw std::invalid_argument(std::string(what) + ": entries must have unit modulus");
        }

        // out_m = sum_t exp(-j 2 pi m t / M) c_t
        CVector dft(const CVector &c)
        {
            if (c.size() <= 1)
                return c; // kissfft does not handle a single point
            Eigen::FFT<double> fft;
            std::vector<cplx> in(c.data(), c.data() + c.size()), out;
            fft.fwd(out, in);
            return Eigen::Map<const CVector>(out.data(), static_cast<Eigen::Index>(out.size()));
        }

        // out_t = sum_m exp(+j 2 pi m t / M) x_m
        CVector dft_adjoint(const CVector &x)
        {
            if (x.size() <= 1)
                return x;
            Eigen::FFT<double> fft;
            fft.SetFlag(Eigen::FFT<double>::Unscaled);
            std::vector<cplx> in(x.data(), x.data() + x.size()), out;
            fft.inv(out, in);
            return Eigen::Map<const CVector>(out.data(), static_cast<Eigen::Index>(out.size()));
        }

        void require_pilot_power(const PilotPlan &plan)
        {
            if (!(plan.rho_mw() > 0.0))
                throw EstimationError("pilot power rho must be positive for estimation");
            for (Eigen::Index t = 0; t < plan.pilot_symbols().size(); ++t)
                if (plan.pilot_symbols()[t] == cplx(0.0, 0.0))
                    throw EstimationError("pilot symbol " + std::to_string(t) + " is zero");
        }
    }

    // ---------------------------------------------------------------- PilotPlan

    void PilotPlan::set_pilot_symbols(const CVector &x)
    {
        if (x.size() != symbols_.size())
            throw std::invalid_argument("PilotPlan: pilot symbol count must equal P");
        symbols_ = x;
    }

    CVector PilotPlan::configuration(int t) const
    {
        if (t < 0 || t >= length())
            throw std::out_of_range("PilotPlan::configuration: index out of range");
        if (kind_ == PilotKind::reduced_subspace)
            return (phi_tx_.array() * basis_->column(t).array().conjugate()).matrix();
        CVector e = CVector::Zero(length());
        e[t] = 1.0;
        return dft(e);
    }

    CMatrix PilotPlan::phi() const
    {
        CMatrix out(m_, length());
        for (int t = 0; t < length(); ++t)
            out.col(t) = configuration(t);
        return out;
    }

    CVector PilotPlan::apply(const CVector &c) const
    {
        if (c.size() != length())
            throw std::invalid_argument("PilotPlan::apply: length must equal P");
        if (kind_ == PilotKind::reduced_subspace)
            return (phi_tx_.array() * basis_->synthesize(c.conjugate()).array().conjugate()).matrix();
        return dft(c);
    }

    CVector PilotPlan::apply_adjoint(const CVector &x) const
    {
        if (x.size() != m_)
            throw std::invalid_argument("PilotPlan::apply_adjoint: length must equal M");
        if (kind_ == PilotKind::reduced_subspace)
        {
            // Phi^H x = B^T (conj(phi_tx) x) = conj(B^H (phi_tx conj(x)))
            const CVector z = (phi_tx_.array() * x.array().conjugate()).matrix();
            return basis_->coefficients(z).conjugate() * static_cast<double>(m_);
        }
        return dft_adjoint(x);
    }

    PilotPlan rsls_pilot_plan(std::shared_ptr<const BasisSet> basis, const CVector &phi_tx, double rho_mw)
    {
        if (!basis)
            throw std::invalid_argument("rsls_pilot_plan: null basis");
        if (phi_tx.size() != basis->elements())
            throw std::invalid_argument("rsls_pilot_plan: phi_tx length must equal M");
        require_unit_modulus(phi_tx, "rsls_pilot_plan: phi_tx");
        if (!(rho_mw >= 0.0))
            throw std::invalid_argument("rsls_pilot_plan: rho must be nonnegative");

        PilotPlan plan;
        plan.kind_ = PilotKind::reduced_subspace;
        plan.rho_mw_ = rho_mw;
        plan.m_ = basis->elements();
        plan.symbols_ = CVector::Constant(basis->eta(), std::sqrt(rho_mw));
        plan.phi_tx_ = phi_tx;
        plan.basis_ = std::move(basis);
        return plan;
    }

    PilotPlan ls_pilot_plan(int m, double rho_mw)
    {
        if (m < 1)
            throw std::invalid_argument("ls_pilot_plan: M must be positive");
        if (!(rho_mw >= 0.0))
            throw std::invalid_argument("ls_pilot_plan: rho must be nonnegative");
        PilotPlan plan;
        plan.kind_ = PilotKind::full_ls;
        plan.rho_mw_ = rho_mw;
        plan.m_ = m;
        plan.symbols_ = CVector::Constant(m, std::sqrt(rho_mw));
        return plan;
    }

    // ---------------------------------------------------------------- reception and estimation

    RxPilots simulate_pilots(const CascadedChannel &V, const PilotPlan &plan, const std::optional<CVector> &w,
                             double sigma2_mw, Rng &rng)
    {
        const CMatrix &Vm = V.matrix;
        if (Vm.cols() != plan.elements())
            throw std::invalid_argument("simulate_pilots: channel has " + std::to_string(Vm.cols()) +
                                        " columns but the plan expects M = " + std::to_string(plan.elements()));
        if (!(sigma2_mw >= 0.0))
            throw std::invalid_argument("simulate_pilots: noise variance must be nonnegative");

        RxPilots rx;
        rx.noise_var_mw = sigma2_mw;
        const CVector &x = plan.pilot_symbols();

        if (plan.kind() == PilotKind::reduced_subspace)
        {
            if (!w)
                throw std::invalid_argument("simulate_pilots: reduced-subspace plans need a combiner w");
            if (w->size() != Vm.rows() || std::abs(w->norm() - 1.0) > unit_tol)
                throw std::invalid_argument("simulate_pilots: combiner must be a unit-norm N-vector");
            const CVector g = Vm.adjoint() * (*w);
            // w^H V phi_t = conj((Phi^H g)_t)
            const CVector signal = plan.apply_adjoint(g).conjugate();
            CVector noise(plan.length());
            for (Eigen::Index t = 0; t < noise.size(); ++t)
                noise[t] = rng.complex_normal(sigma2_mw);
            rx.combined = (signal.array() * x.array() + noise.array()).matrix();
            rx.combined_noise = std::move(noise);
            return rx;
        }

        if (w)
            throw std::invalid_argument("simulate_pilots: full-LS plans take no combiner");
        CMatrix Y(Vm.rows(), plan.length());
        for (Eigen::Index n = 0; n < Vm.rows(); ++n)
        {
            // (V Phi)_{n,:} = conj(Phi^H conj(V_{n,:}))
            const CVector row = Vm.row(n).adjoint();
            Y.row(n) = plan.apply_adjoint(row).adjoint();
        }
        Y = Y * x.asDiagonal();
        for (Eigen::Index t = 0; t < Y.cols(); ++t)
            for (Eigen::Index n = 0; n < Y.rows(); ++n)
                Y(n, t) += rng.complex_normal(sigma2_mw);
        rx.full = std::move(Y);
        return rx;
    }

    CVector rsls_estimate(const RxPilots &rx, const PilotPlan &plan)
    {
        if (plan.kind() != PilotKind::reduced_subspace)
            throw std::invalid_argument("rsls_estimate: plan is not a reduced-subspace plan");
        if (!rx.combined)
            throw std::invalid_argument("rsls_estimate: received pilots carry no combined signal");
        if (rx.combined->size() != plan.length())
            throw std::invalid_argument("rsls_estimate: expected eta = " + std::to_string(plan.length()) +
                                        " received samples");
        require_pilot_power(plan);
        const CVector z = (rx.combined->array() / plan.pilot_symbols().array()).conjugate().matrix();
        return plan.apply(z) / static_cast<double>(plan.elements());
    }

    CMatrix assemble_cascaded(const CVector &w, const CVector &v_hat)
    {
        return w * v_hat.adjoint();
    }

    CMatrix ls_estimate(const RxPilots &rx, const PilotPlan &plan)
    {
        if (plan.kind() != PilotKind::full_ls)
            throw std::invalid_argument("ls_estimate: plan is not a full-LS plan");
        if (!rx.full)
            throw std::invalid_argument("ls_estimate: received pilots carry no full observation");
        const CMatrix &Y = *rx.full;
        if (Y.cols() != plan.elements() || plan.length() != plan.elements())
            throw std::invalid_argument("ls_estimate: LS needs one pilot per RIS element (P = M)");
        require_pilot_power(plan);

        const CMatrix Yx = Y * plan.pilot_symbols().cwiseInverse().asDiagonal();
        CMatrix V_hat(Y.rows(), plan.elements());
        for (Eigen::Index n = 0; n < Y.rows(); ++n)
        {
            // (Y' Phi^H)_{n,:} = conj(Phi conj(Y'_{n,:}))
            const CVector row = Yx.row(n).adjoint();
            V_hat.row(n) = plan.apply(row).adjoint();
        }
        return V_hat / static_cast<double>(plan.elements());
    }
}
