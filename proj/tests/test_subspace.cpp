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
#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ris/rng.hpp"
#include "ris/subspace.hpp"

#include <algorithm>
#include <cmath>

using namespace ris;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    CVector random_vector(int n, Rng &rng)
    {
        CVector x(n);
        for (int i = 0; i < n; ++i)
            x(i) = rng.complex_normal(1.0);
        return x;
    }

    std::vector<std::pair<double, double>> as_pairs(const BasisSet &b)
    {
        std::vector<std::pair<double, double>> out;
        for (const auto &p : b.pairs())
            out.push_back({p.azimuth, p.elevation});
        return out;
    }
}

TEST_CASE("beam-pattern factors", "[subspace]")
{
    CHECK_THAT(s_factor(0.0, 8, 0.25), WithinAbs(1.0, 1e-15));
    CHECK_THAT(t_factor(0.0, 8, 0.25), WithinAbs(1.0, 1e-15));
    for (int k : {1, 2, 3, -1, -5, 7})
    {
        CHECK_THAT(s_factor(k / (8 * 0.25), 8, 0.25), WithinAbs(0.0, 1e-12));
        CHECK_THAT(t_factor(k / (16 * 0.5), 16, 0.5), WithinAbs(0.0, 1e-12));
    }
    CHECK_THAT(s_factor(1.0 / 0.25, 8, 0.25), WithinAbs(1.0, 1e-12));
    CHECK_THAT(t_factor(1.0 / 0.125, 8, 0.125), WithinAbs(1.0, 1e-12));
}

TEST_CASE("elevation grid", "[subspace]")
{
    const auto e8 = elevation_set(8, 0.25);
    const std::vector<double> ref8{-pi / 2, -pi / 6, 0.0, pi / 6, pi / 2};
    REQUIRE(e8.size() == ref8.size());
    for (std::size_t i = 0; i < ref8.size(); ++i)
        CHECK_THAT(e8[i], WithinAbs(ref8[i], 1e-12));

    const auto e2 = elevation_set(2, 0.5);
    REQUIRE(e2.size() == 3);
    CHECK_THAT(e2[0], WithinAbs(-pi / 2, 1e-12));
    CHECK_THAT(e2[1], WithinAbs(0.0, 1e-15));
    CHECK_THAT(e2[2], WithinAbs(pi / 2, 1e-12));

    const auto e1 = elevation_set(1, 0.7);
    REQUIRE(e1.size() == 1);
    CHECK(e1[0] == 0.0);
}

TEST_CASE("azimuth grid", "[subspace]")
{
    const auto a0 = azimuth_set(0.0, 8, 0.25);
    const std::vector<double> ref0{pi / 2, pi / 6, 0.0, -pi / 6, -pi / 2};
    REQUIRE(a0.size() == ref0.size());
    for (std::size_t i = 0; i < ref0.size(); ++i)
        CHECK_THAT(a0[i], WithinAbs(ref0[i], 1e-12));

    const auto pole = azimuth_set(pi / 2, 13, 0.3);
    REQUIRE(pole.size() == 1);
    CHECK_THAT(pole[0], WithinAbs(pi / 2, 1e-15));

    const auto a6 = azimuth_set(pi / 6, 8, 0.25);
    REQUIRE(a6.size() == 4);
    const double r3 = std::sqrt(3.0);
    for (int l = 0; l < 4; ++l)
        CHECK_THAT(a6[l], WithinAbs(std::asin(1.0 - l / r3), 1e-12));
}

TEST_CASE("8x8 quarter-wavelength basis matches the hand enumeration", "[subspace]")
{
    const auto b = generate_basis({8, 8, 0.25, 0.25});
    const auto ref = oracle::hand_basis_8x8_quarter();
    REQUIRE(b.eta() == 15);
    for (int t = 0; t < 15; ++t)
    {
        CHECK_THAT(b.entries()[t].angle.azimuth, WithinAbs(ref[t].first, 1e-12));
        CHECK_THAT(b.entries()[t].angle.elevation, WithinAbs(ref[t].second, 1e-12));
    }
}

TEST_CASE("single-element basis", "[subspace]")
{
    for (double d : {0.1, 0.5, 1.0})
    {
        const auto b = generate_basis({1, 1, d, d});
        REQUIRE(b.eta() == 1);
        CHECK_THAT(b.entries()[0].angle.azimuth, WithinAbs(pi / 2, 1e-15));
        CHECK(b.entries()[0].angle.elevation == 0.0);
    }
}

TEST_CASE("generated bases are orthogonal and match their dense columns", "[subspace]")
{
    for (int m : {2, 4, 8, 16})
        for (double d : {0.125, 0.25, 0.5, 1.0})
        {
            const ArrayGeometry g{m, m, d, d};
            const auto b = generate_basis(g);
            CHECK(b.eta() <= g.elements());
            const CMatrix B = oracle::steering_matrix(m, m, d, d, as_pairs(b));
            const CMatrix gram = B.adjoint() * B / double(g.elements());
            const double off = (gram - CMatrix::Identity(b.eta(), b.eta())).cwiseAbs().maxCoeff();
            INFO("m=" << m << " d=" << d);
            CHECK(off < 1e-9);
            CHECK(max_cross_correlation(b) < 1e-9);
            CHECK((b.vectors() - B).norm() < 1e-10 * B.norm());
        }
}

TEST_CASE("rectangular arrays", "[subspace]")
{
    const ArrayGeometry g{8, 4, 0.25, 0.5};
    const auto b = generate_basis(g);
    const CMatrix B = oracle::steering_matrix(8, 4, 0.25, 0.5, as_pairs(b));
    const CMatrix gram = B.adjoint() * B / 32.0;
    CHECK((gram - CMatrix::Identity(b.eta(), b.eta())).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("basis ordering is elevation ascending, azimuth descending", "[subspace]")
{
    const auto b = generate_basis({16, 16, 0.25, 0.25});
    const auto &e = b.entries();
    for (std::size_t t = 1; t < e.size(); ++t)
    {
        CHECK(e[t].angle.elevation >= e[t - 1].angle.elevation);
        if (e[t].angle.elevation == e[t - 1].angle.elevation)
            CHECK(e[t].angle.azimuth < e[t - 1].angle.azimuth);
    }
}

TEST_CASE("dof approximation", "[subspace]")
{
    CHECK_THAT(dof_approx({128, 128, 0.25, 0.25}), WithinRel(1024 * pi, 1e-14));
    CHECK_THAT(dof_approx({8, 8, 0.25, 0.25}), WithinRel(4 * pi, 1e-14));
    CHECK_THAT(dof_approx({16, 8, 0.25, 0.25}), WithinRel(2 * dof_approx({8, 8, 0.25, 0.25}), 1e-14));
    for (int m : {32, 64})
    {
        const ArrayGeometry g{m, m, 0.25, 0.25};
        const double eta = generate_basis(g).eta();
        CHECK(std::abs(eta - dof_approx(g)) / eta <= 0.10);
    }
}

TEST_CASE("eta over M shrinks with spacing", "[subspace]")
{
    for (int m : {16, 32})
    {
        const double M = m * m;
        const double r8 = generate_basis({m, m, 0.125, 0.125}).eta() / M;
        const double r4 = generate_basis({m, m, 0.25, 0.25}).eta() / M;
        const double r2 = generate_basis({m, m, 0.5, 0.5}).eta() / M;
        CHECK(r8 < r4);
        CHECK(r4 < r2);
    }
}

TEST_CASE("projection", "[subspace]")
{
    const ArrayGeometry g{16, 16, 0.25, 0.25};
    const auto b = generate_basis(g);
    const CMatrix B = oracle::steering_matrix(16, 16, 0.25, 0.25, as_pairs(b));
    Rng rng(5);

    SECTION("fixes basis vectors")
    {
        for (int t : {0, 7, b.eta() - 1})
        {
            const CVector col = b.column(t);
            CHECK((project(b, col) - col).norm() < 1e-10 * col.norm());
        }
    }
    SECTION("matches the dense projector and is idempotent")
    {
        const CVector h = random_vector(g.elements(), rng);
        const CVector p = project(b, h);
        CHECK((p - oracle::projection(B, h)).norm() < 1e-10 * h.norm());
        CHECK((project(b, p) - p).norm() < 1e-10 * p.norm());
        CHECK(p.squaredNorm() <= h.squaredNorm() * (1 + 1e-12));
    }
    SECTION("steering vectors near boresight are mostly captured")
    {
        const ArrayGeometry g32{32, 32, 0.25, 0.25};
        const auto b32 = generate_basis(g32);
        for (AnglePair ang : {AnglePair{0.1, -0.2}, AnglePair{-0.3, -0.1}, AnglePair{0.5, -0.4}})
        {
            const CVector a = upa_steering(g32, ang);
            const CVector p = project(b32, a);
            const CMatrix B32 = oracle::steering_matrix(32, 32, 0.25, 0.25, as_pairs(b32));
            const double ref = oracle::projection(B32, a).squaredNorm() / a.squaredNorm();
            CHECK_THAT(p.squaredNorm() / a.squaredNorm(), WithinAbs(ref, 1e-10));
            CHECK(ref >= 0.95);
        }
    }
    SECTION("rejects mismatched length")
    {
        CHECK_THROWS_AS(project(b, CVector::Ones(10)), std::invalid_argument);
    }
}

TEST_CASE("subspace coefficients", "[subspace]")
{
    const ArrayGeometry g{8, 8, 0.25, 0.25};
    const auto b = generate_basis(g);
    Rng rng(9);

    const CVector c3 = subspace_coefficients(b, b.column(3));
    for (int t = 0; t < b.eta(); ++t)
        CHECK(std::abs(c3(t) - (t == 3 ? 1.0 : 0.0)) < 1e-12);

    const CVector h1 = random_vector(64, rng), h2 = random_vector(64, rng);
    const cplx alpha(0.3, -1.7);
    const CVector lhs = subspace_coefficients(b, alpha * h1 + h2);
    const CVector rhs = alpha * subspace_coefficients(b, h1) + subspace_coefficients(b, h2);
    CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());

    // Parseval: ||h||^2 >= M ||c||^2, equality inside the subspace
    const CVector c = subspace_coefficients(b, h1);
    CHECK(h1.squaredNorm() >= 64.0 * c.squaredNorm());
    const CVector inside = b.synthesize(c);
    CHECK_THAT(inside.squaredNorm(), WithinRel(64.0 * subspace_coefficients(b, inside).squaredNorm(), 1e-10));
}

TEST_CASE("correlation spectrum", "[subspace]")
{
    const ArrayGeometry g{8, 8, 0.25, 0.25};
    const Range az{-pi / 3, pi / 3}, el{-pi / 2, pi / 2};
    const auto s = correlation_spectrum(g, az, el, 10000, 42, 1);
    REQUIRE(s.eigenvalues.size() == 64);
    CHECK(s.sample_count == 10000);
    CHECK_THAT(s.total(), WithinRel(64.0, 0.01));
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    {
        CHECK(s.eigenvalues[i] >= 0.0);
        if (i)
            CHECK(s.eigenvalues[i] <= s.eigenvalues[i - 1]);
    }

    SECTION("matches a dense sample covariance built from the same draws")
    {
        CMatrix R = CMatrix::Zero(64, 64);
        for (std::uint64_t k = 0; k < 10000; ++k)
        {
            auto rng = Rng::derive(42, {k});
            const double a = rng.uniform(az);
            const double e = rng.uniform(el);
            const auto v = oracle::upa(8, 8, 0.25, 0.25, a, e);
            R += v * v.adjoint();
        }
        R /= 10000.0;
        const auto ref = oracle::eigenvalues_desc(R);
        for (std::size_t i = 0; i < 64; ++i)
            CHECK(std::abs(s.eigenvalues[i] - std::max(ref[i], 0.0)) < 1e-9 * 64);
    }
    SECTION("independent of the worker count")
    {
        const auto s4 = correlation_spectrum(g, az, el, 10000, 42, 4);
        CHECK(s4.eigenvalues == s.eigenvalues);
    }
    SECTION("top-eta mass beats any other eta-subset")
    {
        const auto eta = static_cast<std::size_t>(generate_basis(g).eta());
        const double top = s.captured_fraction(eta);
        CHECK(top > 0.9);
        for (std::size_t start = 1; start + eta <= 64; ++start)
        {
            double mass = 0.0;
            for (std::size_t i = start; i < start + eta; ++i)
                mass += s.eigenvalues[i];
            CHECK(mass / s.total() < top);
        }
    }
    SECTION("argument errors")
    {
        CHECK_THROWS_AS(correlation_spectrum(g, az, el, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(correlation_spectrum(g, Range{1.0, 0.0}, el, 10, 1), std::invalid_argument);
    }
}
