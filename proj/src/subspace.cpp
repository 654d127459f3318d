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
#include "ris/subspace.hpp"
#include "ris/parallel.hpp"
#include "ris/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ris
{
    namespace
    {
        constexpr double domain_slack = 1e-12;
        constexpr double pole_cos = 1e-12;
        constexpr double orthogonality_tol = 1e-9;

        struct GridPoint
        {
            int index;
            double angle;
        };

        // Returns arcsin(x) for |x| <= 1 (with rounding slack), or false when outside
        bool checked_asin(double x, double &out)
        {
            if (std::abs(x) > 1.0 + domain_slack)
                return false;
            out = std::asin(std::clamp(x, -1.0, 1.0));
            return true;
        }

        std::vector<GridPoint> elevation_grid(int m_v, double d_v)
        {
            std::vector<GridPoint> out;
            const int kmax = m_v / 2;
            for (int k = -kmax; k <= kmax; ++k)
            {
                double theta;
                if (checked_asin(k / (m_v * d_v), theta))
                    out.push_back({k, theta});
            }
            return out; // ascending because k is ascending
        }

        std::vector<GridPoint> azimuth_grid(double theta, int m_h, double d_h)
        {
            const double c = std::cos(theta);
            if (std::abs(c) < pole_cos)
                return {{0, 0.5 * pi}};

            std::vector<GridPoint> out;
            // l = 0, -1, ..., -(m_h - 1), then positive l (out of the arcsin domain whenever cos > 0)
            for (int l = 0; l >= -(m_h - 1); --l)
            {
                double phi;
                if (checked_asin(1.0 + l / (m_h * d_h * c), phi))
                    out.push_back({l, phi});
            }
            for (int l = 1; l <= m_h - 1; ++l)
            {
                double phi;
                if (checked_asin(1.0 + l / (m_h * d_h * c), phi))
                    out.push_back({l, phi});
            }
            std::stable_sort(out.begin(), out.end(), [](const GridPoint &a, const GridPoint &b)
                             { return a.angle > b.angle; });
            return out;
        }
    }

    // ---------------------------------------------------------------- BasisSet

    BasisSet::BasisSet(const ArrayGeometry &geom, std::vector<BasisEntry> entries)
        : geom_(geom), entries_(std::move(entries))
    {
        geom_.validate();
        if (entries_.empty())
            throw std::invalid_argument("BasisSet: empty basis");
        const int eta = static_cast<int>(entries_.size());
        horizontal_.resize(geom_.m_h, eta);
        vertical_.resize(geom_.m_v, eta);
        for (int t = 0; t < eta; ++t)
        {
            const auto f = spatial_frequency(entries_[t].angle);
            horizontal_.col(t) = horizontal_phasors(geom_.m_h, geom_.d_h, f.psi);
            vertical_.col(t) = vertical_phasors(geom_.m_v, geom_.d_v, f.omega);
        }
    }

    std::vector<AnglePair> BasisSet::pairs() const
    {
        std::vector<AnglePair> out;
        out.reserve(entries_.size());
        for (const auto &e : entries_)
            out.push_back(e.angle);
        return out;
    }

    CVector BasisSet::column(int t) const
    {
        if (t < 0 || t >= eta())
            throw std::out_of_range("BasisSet::column: index out of range");
        CVector b(elements());
        for (int j = 0; j < geom_.m_v; ++j)
            b.segment(j * geom_.m_h, geom_.m_h) = horizontal_.col(t) * vertical_(j, t);
        return b;
    }

    CMatrix BasisSet::vectors() const
    {
        CMatrix out(elements(), eta());
        for (int t = 0; t < eta(); ++t)
            out.col(t) = column(t);
        return out;
    }

    CVector BasisSet::coefficients(const CVector &x) const
    {
        if (x.size() != elements())
            throw std::invalid_argument("BasisSet::coefficients: vector length does not match M");
        Eigen::Map<const CMatrix> grid(x.data(), geom_.m_h, geom_.m_v);
        const CMatrix partial = horizontal_.adjoint() * grid; // eta x m_v
        CVector c = (partial.array() * vertical_.transpose().conjugate().array()).rowwise().sum();
        return c / static_cast<double>(elements());
    }

    CVector BasisSet::synthesize(const CVector &c) const
    {
        if (c.size() != eta())
            throw std::invalid_argument("BasisSet::synthesize: coefficient length does not match eta");
        CVector x(elements());
        Eigen::Map<CMatrix> grid(x.data(), geom_.m_h, geom_.m_v);
        grid.noalias() = horizontal_ * c.asDiagonal() * vertical_.transpose();
        return x;
    }

    // ---------------------------------------------------------------- free functions

    double s_factor(double omega, int m_v, double d_v)
    {
        return dirichlet(pi * d_v * omega, m_v);
    }

    double t_factor(double psi, int m_h, double d_h)
    {
        return dirichlet(pi * d_h * psi, m_h);
    }

    std::vector<double> elevation_set(int m_v, double d_v)
    {
        if (m_v < 1 || !(d_v > 0.0))
            throw std::invalid_argument("elevation_set: m_v must be positive and d_v > 0");
        std::vector<double> out;
        for (const auto &g : elevation_grid(m_v, d_v))
            out.push_back(g.angle);
        return out;
    }

    std::vector<double> azimuth_set(double theta, int m_h, double d_h)
    {
        if (m_h < 1 || !(d_h > 0.0))
            throw std::invalid_argument("azimuth_set: m_h must be positive and d_h > 0");
        if (!(std::abs(theta) <= 0.5 * pi + domain_slack))
            throw std::invalid_argument("azimuth_set: theta outside [-pi/2, pi/2]");
        std::vector<double> out;
        for (const auto &g : azimuth_grid(theta, m_h, d_h))
            out.push_back(g.angle);
        return out;
    }

    BasisSet generate_basis(const ArrayGeometry &geom)
    {
        geom.validate();

        struct Row
        {
            double omega;
            std::vector<double> psi; // kept entries only
        };
        std::vector<Row> rows;
        std::vector<BasisEntry> kept;

        for (const auto &el : elevation_grid(geom.m_v, geom.d_v))
        {
            Row row{std::sin(el.angle), {}};
            // rows whose S factor is nonzero against this elevation (aliased rows)
            std::vector<const Row *> aliased;
            for (const auto &r : rows)
                if (s_factor(row.omega - r.omega, geom.m_v, geom.d_v) > orthogonality_tol)
                    aliased.push_back(&r);

            for (const auto &az : azimuth_grid(el.angle, geom.m_h, geom.d_h))
            {
                const AnglePair angle{az.angle, el.angle};
                const double psi = spatial_frequency(angle).psi;

                auto collides = [&](const Row &r, double s)
                {
                    return std::any_of(r.psi.begin(), r.psi.end(), [&](double other)
                                       { return s * t_factor(psi - other, geom.m_h, geom.d_h) > orthogonality_tol; });
                };
                bool drop = collides(row, 1.0);
                for (const Row *r : aliased)
                {
                    if (drop)
                        break;
                    drop = collides(*r, s_factor(row.omega - r->omega, geom.m_v, geom.d_v));
                }
                if (drop)
                    continue;
                row.psi.push_back(psi);
                kept.push_back({angle, el.index, az.index});
            }
            rows.push_back(std::move(row));
        }
        return BasisSet(geom, std::move(kept));
    }

    double dof_approx(const ArrayGeometry &geom)
    {
        return pi * geom.m_h * geom.d_h * geom.m_v * geom.d_v;
    }

    CVector project(const BasisSet &basis, const CVector &h)
    {
        return basis.synthesize(basis.coefficients(h));
    }

    CVector subspace_coefficients(const BasisSet &basis, const CVector &h)
    {
        return basis.coefficients(h);
    }

    double max_cross_correlation(const BasisSet &basis)
    {
        const auto &g = basis.geometry();
        const auto &e = basis.entries();
        std::vector<SpatialFrequency> f;
        f.reserve(e.size());
        for (const auto &x : e)
            f.push_back(spatial_frequency(x.angle));

        double worst = 0.0;
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b)
            {
                const double s = s_factor(f[b].omega - f[a].omega, g.m_v, g.d_v);
                if (s <= worst)
                    continue;
                worst = std::max(worst, s * t_factor(f[b].psi - f[a].psi, g.m_h, g.d_h));
            }
        return worst;
    }

    // ---------------------------------------------------------------- eigen spectrum

    double EigenSpectrum::total() const
    {
        return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
    }

    double EigenSpectrum::captured_fraction(std::size_t count) const
    {
        count = std::min(count, eigenvalues.size());
        const double top = std::accumulate(eigenvalues.begin(), eigenvalues.begin() + count, 0.0);
        return top / total();
    }

    EigenSpectrum correlation_spectrum(const ArrayGeometry &geom, const Range &azimuth, const Range &elevation,
                                       std::int64_t n_samples, std::uint64_t seed, unsigned workers)
    {
        geom.validate();
        if (n_samples <= 0)
            throw std::invalid_argument("correlation_spectrum: n_samples must be positive");
        if (!(azimuth.lo <= azimuth.hi) || !(elevation.lo <= elevation.hi))
            throw std::invalid_argument("correlation_spectrum: empty angle range");
        AnglePair{azimuth.lo, elevation.lo}.validate();
        AnglePair{azimuth.hi, elevation.hi}.validate();
        workers = resolve_workers(workers);

        const int M = geom.elements();
        constexpr std::int64_t chunk = 1024;
        constexpr int block = 64;
        const int n_blocks = (M + block - 1) / block;

        CMatrix R = CMatrix::Zero(M, M); // lower triangle accumulated
        CMatrix A;
        for (std::int64_t s0 = 0; s0 < n_samples; s0 += chunk)
        {
            const auto n = static_cast<int>(std::min(chunk, n_samples - s0));
            A.resize(M, n);
            parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t c)
                         {
                             auto rng = Rng::derive(seed, {static_cast<std::uint64_t>(s0) + c});
                             const double az = rng.uniform(azimuth);
                             const double el = rng.uniform(elevation);
                             const auto f = spatial_frequency({az, el});
                             const CVector h = horizontal_phasors(geom.m_h, geom.d_h, f.psi);
                             const CVector v = vertical_phasors(geom.m_v, geom.d_v, f.omega);
                             for (int j = 0; j < geom.m_v; ++j)
                                 A.col(c).segment(j * geom.m_h, geom.m_h) = h * v[j]; });

            parallel_for(static_cast<std::size_t>(n_blocks), workers, [&](std::size_t b)
                         {
                             const int c0 = static_cast<int>(b) * block;
                             const int w = std::min(block, M - c0);
                             R.block(c0, c0, M - c0, w).noalias() +=
                                 A.middleRows(c0, M - c0) * A.middleRows(c0, w).adjoint(); });
        }
        R /= static_cast<double>(n_samples);

        Eigen::SelfAdjointEigenSolver<CMatrix> solver(R, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("correlation_spectrum: eigendecomposition failed");

        EigenSpectrum out;
        out.geometry = geom;
        out.sample_count = n_samples;
        const auto &ev = solver.eigenvalues();
        out.eigenvalues.resize(static_cast<std::size_t>(M));
        for (int i = 0; i < M; ++i)
            out.eigenvalues[static_cast<std::size_t>(i)] = std::max(0.0, ev[M - 1 - i]); // rounding can leave -1e-14
        return out;
    }
}
