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
#include "ris/channel.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ris
{
    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    double linear_to_db(double x) { return 10.0 * std::log10(x); }
    double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
    double mw_to_dbm(double mw) { return linear_to_db(mw); }

    void LinkBudget::validate() const
    {
        if (!(carrier_hz > 0.0))
            throw std::invalid_argument("LinkBudget: carrier frequency must be positive");
        if (!(bandwidth_hz > 0.0))
            throw std::invalid_argument("LinkBudget: bandwidth must be positive");
        if (!std::isfinite(noise_dbm))
            throw std::invalid_argument("LinkBudget: noise power must be finite");
    }

    BsRisChannel bs_ris_los(const UlaGeometry &bs, const ArrayGeometry &ris, double phi_bs, double phi_aod,
                            double theta_aod, cplx beta_br)
    {
        const CVector a_bs = ula_steering(bs, phi_bs);
        const CVector a_ris = upa_steering(ris, {phi_aod, theta_aod});
        const double n = bs.n;
        const double m = ris.elements();

        BsRisChannel out;
        out.matrix = beta_br * a_bs * a_ris.adjoint();
        out.u1 = a_bs / std::sqrt(n);
        out.lambda1 = std::sqrt(m * n) * beta_br;
        out.v1 = a_ris / std::sqrt(m);
        return out;
    }

    CMatrix bs_ris_multipath(const UlaGeometry &bs, const ArrayGeometry &ris, std::span<const BsRisPath> paths)
    {
        bs.validate();
        ris.validate();
        CMatrix H = CMatrix::Zero(bs.n, ris.elements());
        for (const auto &p : paths)
            H.noalias() += p.gain * ula_steering(bs, p.phi_bs) * upa_steering(ris, {p.phi_aod, p.theta_aod}).adjoint();
        return H;
    }

    BsRisChannel bs_ris_from_matrix(const CMatrix &H)
    {
        if (H.size() == 0)
            throw std::invalid_argument("bs_ris_from_matrix: empty matrix");
        Eigen::BDCSVD<CMatrix> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
        BsRisChannel out;
        out.matrix = H;
        out.u1 = svd.matrixU().col(0);
        out.lambda1 = svd.singularValues()[0];
        out.v1 = svd.matrixV().col(0);
        return out;
    }

    double ue_pathloss_db(double d_m)
    {
        if (!(d_m > 0.0))
            throw std::invalid_argument("ue_pathloss_db: distance must be positive");
        return -61.4 - 20.0 * std::log10(d_m);
    }

    double rician_k_db(double d_m)
    {
        return 13.0 - 0.03 * d_m;
    }

    cplx los_gain(const LinkBudget &budget, double d_m)
    {
        const double amplitude = std::pow(10.0, ue_pathloss_db(d_m) / 20.0);
        return std::polar(amplitude, -2.0 * pi * d_m / budget.wavelength_m());
    }

    std::vector<double> nlos_power_profile(int n_nlos, double total_mw)
    {
        if (n_nlos < 0)
            throw std::invalid_argument("nlos_power_profile: negative path count");
        std::vector<double> p(static_cast<std::size_t>(n_nlos));
        double sum = 0.0;
        for (int l = 0; l < n_nlos; ++l)
            sum += (p[static_cast<std::size_t>(l)] = std::exp(-static_cast<double>(l)));
        for (auto &x : p)
            x *= total_mw / sum;
        return p;
    }

    UeChannel ue_channel(const ArrayGeometry &ris, const LinkBudget &budget, const UserPosition &user, int n_nlos,
                         Rng &rng, const CoverageSector &sector)
    {
        if (!(user.distance_m > 0.0))
            throw std::invalid_argument("ue_channel: distance must be positive");
        if (n_nlos < 0)
            throw std::invalid_argument("ue_channel: negative NLOS path count");

        UeChannel out;
        out.distance_m = user.distance_m;
        out.rician_k_db = rician_k_db(user.distance_m);
        out.los = {los_gain(budget, user.distance_m), user.azimuth, user.elevation};
        out.vector = out.los.gain * upa_steering(ris, {user.azimuth, user.elevation});

        const double los_power = std::norm(out.los.gain);
        const auto gamma = nlos_power_profile(n_nlos, los_power / db_to_linear(out.rician_k_db));
        out.nlos.reserve(gamma.size());
        for (double g : gamma)
        {
            PathComponent p;
            p.gain = rng.complex_normal(g);
            p.azimuth = rng.uniform(sector.azimuth);
            p.elevation = rng.uniform(sector.elevation);
            out.vector.noalias() += p.gain * upa_steering(ris, {p.azimuth, p.elevation});
            out.nlos.push_back(p);
        }
        return out;
    }

    CascadedChannel cascaded(const BsRisChannel &H, const CVector &h)
    {
        if (h.size() != H.matrix.cols())
            throw std::invalid_argument("cascaded: UE channel length does not match RIS size");
        CascadedChannel out;
        out.matrix = H.matrix * h.asDiagonal();
        out.tilde_v1 = std::conj(H.lambda1) * (h.conjugate().array() * H.v1.array()).matrix();
        return out;
    }

    CascadedChannel cascaded(const BsRisChannel &H, const UeChannel &h)
    {
        return cascaded(H, h.vector);
    }

    // ---------------------------------------------------------------- binary dump

    namespace
    {
        void put_u32(std::ostream &os, std::uint32_t v)
        {
            const char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                               static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
            os.write(b, 4);
        }

        std::uint32_t get_u32(std::istream &is)
        {
            unsigned char b[4];
            if (!is.read(reinterpret_cast<char *>(b), 4))
                throw std::runtime_error("read_channel_dump: truncated input");
            return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
                   (std::uint32_t(b[3]) << 24);
        }

        void put_f32(std::ostream &os, double x)
        {
            const float f = static_cast<float>(x);
            std::uint32_t bits;
            std::memcpy(&bits, &f, 4);
            put_u32(os, bits);
        }

        double get_f32(std::istream &is)
        {
            const std::uint32_t bits = get_u32(is);
            float f;
            std::memcpy(&f, &bits, 4);
            return f;
        }
    }

    void write_channel_dump(std::ostream &os, const CMatrix &m, std::uint32_t flags)
    {
        put_u32(os, dump_magic);
        put_u32(os, static_cast<std::uint32_t>(m.rows()));
        put_u32(os, static_cast<std::uint32_t>(m.cols()));
        put_u32(os, flags);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
            {
                put_f32(os, m(r, c).real());
                put_f32(os, m(r, c).imag());
            }
        if (!os)
            throw std::runtime_error("write_channel_dump: write failed");
    }

    CMatrix read_channel_dump(std::istream &is, std::uint32_t *flags)
    {
        if (get_u32(is) != dump_magic)
            throw std::runtime_error("read_channel_dump: bad magic");
        const std::uint32_t rows = get_u32(is);
        const std::uint32_t cols = get_u32(is);
        const std::uint32_t f = get_u32(is);
        if (flags)
            *flags = f;
        CMatrix m(rows, cols);
        for (std::uint32_t r = 0; r < rows; ++r)
            for (std::uint32_t c = 0; c < cols; ++c)
            {
                const double re = get_f32(is);
                const double im = get_f32(is);
                m(r, c) = {re, im};
            }
        return m;
    }
}
