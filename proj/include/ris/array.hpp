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
#ifndef RIS_ARRAY_HPP
#define RIS_ARRAY_HPP

#include "ris/types.hpp"

namespace ris
{
    // Uniform planar array (the RIS). Element m (1-based) sits at horizontal index
    // i = (m-1) mod m_h and vertical index j = (m-1) / m_h, i.e. i varies fastest.
    // Spacings are normalized by the carrier wavelength.
    struct ArrayGeometry
    {
        int m_h = 1;
        int m_v = 1;
        double d_h = 0.5;
        double d_v = 0.5;

        int elements() const { return m_h * m_v; }
        void validate() const; // throws std::invalid_argument
        bool operator==(const ArrayGeometry &) const = default;
    };

    // Uniform linear array (the BS)
    struct UlaGeometry
    {
        int n = 1;
        double d = 0.5;

        void validate() const;
        bool operator==(const UlaGeometry &) const = default;
    };

    // Azimuth and elevation in radians, both restricted to [-pi/2, pi/2]
    struct AnglePair
    {
        double azimuth = 0.0;
        double elevation = 0.0;

        void validate() const;
        bool operator==(const AnglePair &) const = default;
    };

    // Horizontal and vertical spatial frequencies of a plane wave:
    // psi = cos(elevation) sin(azimuth), omega = sin(elevation)
    struct SpatialFrequency
    {
        double psi = 0.0;
        double omega = 0.0;
    };

    SpatialFrequency spatial_frequency(const AnglePair &angle);

    struct ElementIndex
    {
        int i = 0; // horizontal
        int j = 0; // vertical
        bool operator==(const ElementIndex &) const = default;
    };

    // m is 1-based, 1 <= m; throws std::out_of_range when m < 1 or m_h < 1.
    // The upper bound m <= M is checked by the overload taking the geometry.
    ElementIndex element_index(int m, int m_h);
    ElementIndex element_index(int m, const ArrayGeometry &geom);

    // Steering vectors carry the conjugated phase convention: entry m equals
    // exp(-j 2 pi [i(m) d_h psi + j(m) d_v omega]). Every entry has unit modulus.
    CVector upa_steering(const ArrayGeometry &geom, const AnglePair &angle);
    CVector ula_steering(const UlaGeometry &geom, double azimuth);

    // Separable factors of a UPA steering vector: upa_steering = kron(vertical, horizontal)
    CVector horizontal_phasors(int m_h, double d_h, double psi);
    CVector vertical_phasors(int m_v, double d_v, double omega);

    // Normalized Dirichlet kernel |sin(count x) / (count sin x)|, equal to 1 where
    // sin x = 0. The result lies in [0, 1].
    double dirichlet(double x, int count);

    // |a(a2)^H a(a1)| evaluated in closed form as M * S(Omega) * T(Psi)
    double inner_product_magnitude(const ArrayGeometry &geom, const AnglePair &a1, const AnglePair &a2);
}

#endif
