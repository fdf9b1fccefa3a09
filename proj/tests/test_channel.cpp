// SPDX-License-Identifier: Apache-2.0
//
// iosim - link-level simulation of sensing-assisted communication through
// a vehicle-mounted intelligent omni-surface
// Copyright (C) 2026 iosim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Geometry-to-angle mapping and the three channel matrices. Reference
// numbers come from the drive-by starting point: road site unit at
// (0, 0, 20), vehicle at (-100, 20, 0), so u = (-100, 20, -20) and
// d = sqrt(10800).

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "iosim/channel.hpp"

using Catch::Approx;
using namespace iosim;

namespace
{

Geometry start_geometry()
{
    Geometry g;
    g.rsu_pos = {0.0, 0.0, 20.0};
    g.veh_pos = {-100.0, 20.0, 0.0};
    g.psi_u_x_rad = 0.6;
    g.psi_u_z_rad = 1.1;
    return g;
}

} // namespace

TEST_CASE("path angles at the drive-by starting point", "[channel]")
{
    PathAngles p = angles_from_geometry(start_geometry());
    CHECK(p.distance == Approx(103.923048454133).epsilon(1e-12));
    CHECK(p.varphi == Approx(2.86594985437353).epsilon(1e-12));
    CHECK(p.phi == Approx(1.37713802635057).epsilon(1e-12));
}

TEST_CASE("path angles collapse to direction cosines", "[channel]")
{
    Geometry g = start_geometry();
    // Move the vehicle around; the arccos outputs must always invert back
    // to u / d on both axes.
    for (double x : {-80.0, -5.0, 0.0, 42.0})
        for (double y : {3.0, 25.0})
        {
            g.veh_pos = {x, y, 0.0};
            arma::vec3 u = g.veh_pos - g.rsu_pos;
            double d = arma::norm(u);
            PathAngles p = angles_from_geometry(g);
            CHECK(p.distance == Approx(d).epsilon(1e-12));
            CHECK(std::cos(p.varphi) == Approx(u(0) / d).margin(1e-12));
            CHECK(std::cos(p.phi) == Approx(u(1) / d).margin(1e-12));
            CHECK(p.varphi >= 0.0);
            CHECK(p.varphi <= pi);
        }
}

TEST_CASE("device direction cosines follow the spherical pair", "[channel]")
{
    Geometry g = start_geometry();
    CHECK(device_cos_x(g) == Approx(std::sin(1.1) * std::cos(0.6)).epsilon(1e-14));
    CHECK(device_cos_y(g) == Approx(std::sin(1.1) * std::sin(0.6)).epsilon(1e-14));
}

TEST_CASE("forward channel is a rank-one steering outer product", "[channel]")
{
    const double varphi = 2.0;
    const double phi = 1.2;
    const double beta_g = 4e-8;
    const arma::uword m_t = 4;
    const arma::uword lx = 3;
    const arma::uword ly = 5;

    arma::cx_mat h = downlink_channel(varphi, phi, beta_g, m_t, lx, ly);
    REQUIRE(h.n_rows == lx * ly);
    REQUIRE(h.n_cols == m_t);

    arma::vec sv = arma::svd(h);
    CHECK(sv(1) <= 1e-12 * sv(0));

    // Entry law: surface response times the unconjugated transmit steering
    // phase, scaled by the one-hop amplitude.
    double amp = std::sqrt(beta_g);
    for (arma::uword ix = 0; ix < lx; ++ix)
        for (arma::uword iy = 0; iy < ly; ++iy)
            for (arma::uword i = 0; i < m_t; ++i)
            {
                std::complex<double> want =
                    amp * std::polar(1.0, pi * (static_cast<double>(ix) * std::cos(varphi) -
                                                static_cast<double>(iy) * std::cos(phi) -
                                                static_cast<double>(i) * std::cos(varphi)));
                CHECK(std::abs(h(ix * ly + iy, i) - want) < 1e-14);
                CHECK(std::abs(h(ix * ly + iy, i)) == Approx(amp).epsilon(1e-12));
            }
}

TEST_CASE("echo channels pair each receive array with its angle", "[channel]")
{
    const double varphi = 2.6;
    const double phi = 1.4;
    const double beta_g = 9e-8;
    const arma::uword m_r = 3;
    const arma::uword lx = 2;
    const arma::uword ly = 4;

    auto [ux, uy] = uplink_channels(varphi, phi, beta_g, m_r, lx, ly);
    REQUIRE(ux.n_rows == m_r);
    REQUIRE(ux.n_cols == lx * ly);
    REQUIRE(uy.n_rows == m_r);
    REQUIRE(uy.n_cols == lx * ly);

    arma::cx_vec a_i = upa_response(varphi, phi, lx, ly);
    arma::cx_vec b_x = ula_response(phi, m_r);
    arma::cx_vec b_y = ula_response(varphi, m_r);
    double amp = std::sqrt(beta_g);
    for (arma::uword i = 0; i < m_r; ++i)
        for (arma::uword l = 0; l < lx * ly; ++l)
        {
            CHECK(std::abs(ux(i, l) - amp * b_x(i) * a_i(l)) < 1e-14);
            CHECK(std::abs(uy(i, l) - amp * b_y(i) * a_i(l)) < 1e-14);
        }
}

TEST_CASE("device channel carries flat gain and linear ramps", "[channel]")
{
    Geometry g = start_geometry();
    const double beta_h = 1e-4;
    const arma::uword lx = 4;
    const arma::uword ly = 3;
    arma::cx_vec h = device_channel(g, beta_h, lx, ly);
    REQUIRE(h.n_elem == lx * ly);

    double cx = device_cos_x(g);
    double cy = device_cos_y(g);
    double amp = std::sqrt(beta_h);
    for (arma::uword ix = 0; ix < lx; ++ix)
        for (arma::uword iy = 0; iy < ly; ++iy)
        {
            std::complex<double> want =
                amp * std::polar(1.0, -pi * (static_cast<double>(ix) * cx +
                                             static_cast<double>(iy) * cy));
            CHECK(std::abs(h(ix * ly + iy) - want) < 1e-14);
        }
}

TEST_CASE("bundled channel set is consistent with its parts", "[channel]")
{
    Geometry g = start_geometry();
    ChannelSet set = make_channel_set(g, 1e-3, 1e-4, 8, 8, 6, 7);

    PathAngles p = angles_from_geometry(g);
    CHECK(set.distance == Approx(p.distance).epsilon(1e-12));
    CHECK(set.beta_g == Approx(1e-3 / (p.distance * p.distance)).epsilon(1e-12));
    CHECK(set.beta_g == Approx(9.25925925925926e-8).epsilon(1e-12));

    arma::cx_mat dl = downlink_channel(p.varphi, p.phi, set.beta_g, 8, 6, 7);
    CHECK(arma::norm(arma::vectorise(set.downlink - dl)) < 1e-14);
    auto up = uplink_channels(p.varphi, p.phi, set.beta_g, 8, 6, 7);
    CHECK(arma::norm(arma::vectorise(set.uplink_x - up.first)) < 1e-14);
    CHECK(arma::norm(arma::vectorise(set.uplink_y - up.second)) < 1e-14);
    arma::cx_vec dev = device_channel(g, 1e-4, 6, 7);
    CHECK(arma::norm(set.device - dev) < 1e-14);
}

TEST_CASE("degenerate geometry and gains are rejected", "[channel]")
{
    Geometry g = start_geometry();
    g.veh_pos = g.rsu_pos;
    CHECK_THROWS_AS(angles_from_geometry(g), std::invalid_argument);
    CHECK_THROWS_AS(downlink_channel(1.0, 1.0, 0.0, 4, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(uplink_channels(1.0, 1.0, -1.0, 4, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(device_channel(start_geometry(), 0.0, 2, 2), std::invalid_argument);
}
