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
#include "ris/array.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ris
{
    namespace
    {
        constexpr double angle_slack = 1e-12;

        CVector phasor_ramp(int count, double step)
        {
            // entry k = exp(-j 2 pi k step)
            CVector out(count);
            for (int k = 0; k < count; ++k)
                out[k] = std::polar(1.0, -2.0 * pi * k * step);
            return out;
        }
    }

    void ArrayGeometry::validate() const
    {
        if (m_h < 1 || m_v < 1)
            throw std::invalid_argument("ArrayGeometry: element counts must be positive");
        if (!(d_h > 0.0) || !(d_v > 0.0) || d_h > 1.0 || d_v > 1.0)
            throw std::invalid_argument("ArrayGeometry: spacings must lie in (0, 1]");
    }

    void UlaGeometry::validate() const
    {
        if (n < 1)
            throw std::invalid_argument("UlaGeometry: antenna count must be positive");
        if (!(d > 0.0) || d > 1.0)
            throw std::invalid_argument("UlaGeometry: spacing must lie in (0, 1]");
    }

    void AnglePair::validate() const
    {
        const double lim = 0.5 * pi + angle_slack;
        if (!(std::abs(elevation) <= lim))
            throw std::invalid_argument("AnglePair: elevation outside [-pi/2, pi/2]");
        if (!(std::abs(azimuth) <= lim))
            throw std::invalid_argument("AnglePair: azimuth outside [-pi/2, pi/2]");
    }

    SpatialFrequency spatial_frequency(const AnglePair &angle)
    {
        return {std::cos(angle.elevation) * std::sin(angle.azimuth), std::sin(angle.elevation)};
    }

    ElementIndex element_index(int m, int m_h)
    {
        if (m_h < 1)
            throw std::out_of_range("element_index: m_h must be positive");
        if (m < 1)
            throw std::out_of_range("element_index: element id " + std::to_string(m) + " is not 1-based");
        return {(m - 1) % m_h, (m - 1) / m_h};
    }

    ElementIndex element_index(int m, const ArrayGeometry &geom)
    {
        if (m > geom.elements())
            throw std::out_of_range("element_index: element id " + std::to_string(m) + " exceeds M = " +
                                    std::to_string(geom.elements()));
        return element_index(m, geom.m_h);
    }

    CVector horizontal_phasors(int m_h, double d_h, double psi)
    {
        return phasor_ramp(m_h, d_h * psi);
    }

    CVector vertical_phasors(int m_v, double d_v, double omega)
    {
        return phasor_ramp(m_v, d_v * omega);
    }

    CVector upa_steering(const ArrayGeometry &geom, const AnglePair &angle)
    {
        geom.validate();
        angle.validate();
        const auto f = spatial_frequency(angle);
        const double step_h = geom.d_h * f.psi;
        const double step_v = geom.d_v * f.omega;
        CVector a(geom.elements());
        for (int j = 0; j < geom.m_v; ++j)
            for (int i = 0; i < geom.m_h; ++i)
                a[j * geom.m_h + i] = std::polar(1.0, -2.0 * pi * (i * step_h + j * step_v));
        return a;
    }

    CVector ula_steering(const UlaGeometry &geom, double azimuth)
    {
        geom.validate();
        return phasor_ramp(geom.n, geom.d * std::sin(azimuth));
    }

    double dirichlet(double x, int count)
    {
        if (count <= 1)
            return 1.0;
        // |sin(count x)| and |sin x| are both pi-periodic in x
        const double r = x - pi * std::round(x / pi);
        const double den = count * std::sin(r);
        if (std::abs(r) < 1e-13)
            return 1.0;
        const double v = std::abs(std::sin(count * r) / den);
        return v > 1.0 ? 1.0 : v;
    }

    double inner_product_magnitude(const ArrayGeometry &geom, const AnglePair &a1, const AnglePair &a2)
    {
        geom.validate();
        a1.validate();
        a2.validate();
        const auto f1 = spatial_frequency(a1);
        const auto f2 = spatial_frequency(a2);
        const double s = dirichlet(pi * geom.d_v * (f2.omega - f1.omega), geom.m_v);
        const double t = dirichlet(pi * geom.d_h * (f2.psi - f1.psi), geom.m_h);
        return geom.elements() * s * t;
    }
}
