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
#ifndef RIS_CHANNEL_HPP
#define RIS_CHANNEL_HPP

#include "ris/array.hpp"
#include "ris/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace ris
{
    // dB helpers; the rest of the library works in linear mW / amplitude units
    double db_to_linear(double db);
    double linear_to_db(double x);
    double dbm_to_mw(double dbm);
    double mw_to_dbm(double mw);

    struct LinkBudget
    {
        double carrier_hz = 28e9;
        double noise_dbm = -96.0;
        double bandwidth_hz = 20e6;

        double wavelength_m() const { return speed_of_light / carrier_hz; }
        double noise_mw() const { return dbm_to_mw(noise_dbm); }
        void validate() const;
    };

    struct PathComponent
    {
        cplx gain;
        double azimuth = 0.0;
        double elevation = 0.0;
    };

    // BS-RIS channel H (N x M) and its rank-one factors H = u1 lambda1 v1^H
    struct BsRisChannel
    {
        CMatrix matrix;
        CVector u1;
        cplx lambda1;
        CVector v1;
    };

    struct UeChannel
    {
        CVector vector;
        double distance_m = 0.0;
        double rician_k_db = 0.0;
        PathComponent los;
        std::vector<PathComponent> nlos;
    };

    // V = H diag(h), tilde_v1 = conj(lambda1) diag(conj(h)) v1, so that u1^H V = tilde_v1^H
    // for a rank-one H (lambda1 may carry the complex path gain)
    struct CascadedChannel
    {
        CMatrix matrix;
        CVector tilde_v1;
    };

    struct BsRisPath
    {
        cplx gain;
        double phi_bs = 0.0;
        double phi_aod = 0.0;
        double theta_aod = 0.0;
    };

    struct UserPosition
    {
        double azimuth = 0.0;
        double elevation = 0.0;
        double distance_m = 1.0;
    };

    // Angular region from which scattered UE paths arrive
    struct CoverageSector
    {
        Range azimuth{-pi / 3.0, pi / 3.0};
        Range elevation{-pi / 2.0, 0.0};
    };

    // H = beta_br a_BS(phi_bs) a_RIS(phi_aod, theta_aod)^H
    BsRisChannel bs_ris_los(const UlaGeometry &bs, const ArrayGeometry &ris, double phi_bs, double phi_aod,
                            double theta_aod, cplx beta_br);

    // Sum of rank-one path terms. An empty path list yields the zero matrix.
    CMatrix bs_ris_multipath(const UlaGeometry &bs, const ArrayGeometry &ris, std::span<const BsRisPath> paths);

    // Leading singular triplet of an arbitrary BS-RIS matrix
    BsRisChannel bs_ris_from_matrix(const CMatrix &H);

    // Free-space-like pathloss -61.4 - 20 log10(d) dB
    double ue_pathloss_db(double d_m);
    // Rician K-factor 13 - 0.03 d dB
    double rician_k_db(double d_m);

    // Complex LOS gain at distance d: amplitude from ue_pathloss_db, phase -2 pi d / lambda
    cplx los_gain(const LinkBudget &budget, double d_m);

    // Per-path powers of the scattered components: exponential decay exp(-(l-1)),
    // normalized to sum to `total_mw`
    std::vector<double> nlos_power_profile(int n_nlos, double total_mw);

    // h = zeta_1 a(user) + sum_l zeta_l a(phi_l, theta_l), with zeta_l ~ CN(0, gamma_l) for
    // the scattered paths and the total scattered power set by the Rician K-factor.
    UeChannel ue_channel(const ArrayGeometry &ris, const LinkBudget &budget, const UserPosition &user, int n_nlos,
                         Rng &rng, const CoverageSector &sector = {});

    CascadedChannel cascaded(const BsRisChannel &H, const UeChannel &h);
    CascadedChannel cascaded(const BsRisChannel &H, const CVector &h);

    // Binary dump for golden tests: 16-byte header (magic "RISV", N, M, flags as
    // little-endian uint32) followed by row-major little-endian complex64 pairs.
    inline constexpr std::uint32_t dump_magic = 0x56534952; // "RISV" read as LE uint32
    void write_channel_dump(std::ostream &os, const CMatrix &m, std::uint32_t flags = 0);
    CMatrix read_channel_dump(std::istream &is, std::uint32_t *flags = nullptr);
}

#endif
