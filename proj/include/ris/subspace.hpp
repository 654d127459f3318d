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
#ifndef RIS_SUBSPACE_HPP
#define RIS_SUBSPACE_HPP

#include "ris/array.hpp"

#include <cstdint>
#include <vector>

namespace ris
{
    // One orthogonal direction of the RIS channel subspace together with the integer
    // grid indices that produced it: elevation from sin(theta) = k / (m_v d_v) and
    // azimuth from cos(theta) (sin(phi) - 1) = l / (m_h d_h).
    struct BasisEntry
    {
        AnglePair angle;
        int k = 0;
        int l = 0;
    };

    // Orthogonal steering-vector basis of an RIS. Columns are stored in factored form
    // (horizontal and vertical phasors per entry) so that large arrays never need the
    // dense M x eta matrix; vectors() materializes it on request.
    class BasisSet
    {
    public:
        BasisSet(const ArrayGeometry &geom, std::vector<BasisEntry> entries);

        const ArrayGeometry &geometry() const { return geom_; }
        const std::vector<BasisEntry> &entries() const { return entries_; }
        std::vector<AnglePair> pairs() const;
        int eta() const { return static_cast<int>(entries_.size()); }
        int elements() const { return geom_.elements(); }

        CVector column(int t) const;
        CMatrix vectors() const;

        // c_t = b_t^H x / M
        CVector coefficients(const CVector &x) const;
        // sum_t c_t b_t
        CVector synthesize(const CVector &c) const;

    private:
        ArrayGeometry geom_;
        std::vector<BasisEntry> entries_;
        CMatrix horizontal_; // m_h x eta
        CMatrix vertical_;   // m_v x eta
    };

    // Normalized beam-pattern factors, both in [0, 1]
    double s_factor(double omega, int m_v, double d_v);
    double t_factor(double psi, int m_h, double d_h);

    // Elevations arcsin(k / (m_v d_v)) for k = 0, +-1, ..., +-floor(m_v / 2), ascending.
    // Arguments outside [-1, 1] are skipped.
    std::vector<double> elevation_set(int m_v, double d_v);

    // Azimuths arcsin(1 + l / (m_h d_h cos(theta))) for l = 0, +-1, ..., +-(m_h - 1),
    // descending. At the poles (cos(theta) = 0) the single direction pi/2 is returned.
    std::vector<double> azimuth_set(double theta, int m_h, double d_h);

    // Builds the basis: elevation ascending, azimuth descending within each elevation.
    // Directions that alias onto an earlier one (non-orthogonal) are dropped.
    BasisSet generate_basis(const ArrayGeometry &geom);

    // pi m_h d_h m_v d_v
    double dof_approx(const ArrayGeometry &geom);

    // (1/M) sum_i b_i b_i^H h, computed without forming an M x M matrix
    CVector project(const BasisSet &basis, const CVector &h);
    CVector subspace_coefficients(const BasisSet &basis, const CVector &h);

    // Largest |b_i^H b_j| / M over i != j, evaluated in closed form
    double max_cross_correlation(const BasisSet &basis);

    struct EigenSpectrum
    {
        std::vector<double> eigenvalues; // descending
        std::int64_t sample_count = 0;
        ArrayGeometry geometry;

        double total() const;
        // Share of the spectrum mass held by the `count` largest eigenvalues
        double captured_fraction(std::size_t count) const;
    };

    // Monte Carlo estimate of R = E{a a^H} with azimuth and elevation drawn uniformly
    // from the given ranges, followed by a Hermitian eigendecomposition. Sample s uses
    // its own random stream derived from (seed, s), and the accumulation is partitioned
    // independently of `workers`, so the result is reproducible for any worker count.
    EigenSpectrum correlation_spectrum(const ArrayGeometry &geom, const Range &azimuth, const Range &elevation,
                                       std::int64_t n_samples, std::uint64_t seed, unsigned workers = 0);
}

#endif
