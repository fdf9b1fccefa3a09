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

#include "iosim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iosim
{

PathAngles angles_from_geometry(const Geometry &geom)
{
    arma::vec3 u = geom.veh_pos - geom.rsu_pos;
    double d = arma::norm(u);
    if (d < 1e-9)
        throw std::invalid_argument("angles_from_geometry: link ends coincide");

    PathAngles out;
    out.varphi = std::acos(std::clamp(u(0) / d, -1.0, 1.0));
    out.phi = std::acos(std::clamp(u(1) / d, -1.0, 1.0));
    out.distance = d;
    return out;
}

double device_cos_x(const Geometry &geom)
{
    return std::sin(geom.psi_u_z_rad) * std::cos(geom.psi_u_x_rad);
}

double device_cos_y(const Geometry &geom)
{
    return std::sin(geom.psi_u_z_rad) * std::sin(geom.psi_u_x_rad);
}

arma::cx_mat downlink_channel(double varphi, double phi, double beta_g,
                              arma::uword m_t, arma::uword lx, arma::uword ly)
{
    if (beta_g <= 0.0)
        throw std::invalid_argument("downlink_channel: beta_g must be positive");
    arma::cx_vec a_i = upa_response(varphi, phi, lx, ly);
    arma::cx_vec a_t = ula_response(varphi, m_t);
    // .st() is the plain transpose; .t() would conjugate and flip the ramp.
    return std::sqrt(beta_g) * (a_i * a_t.st());
}

std::pair<arma::cx_mat, arma::cx_mat> uplink_channels(double varphi, double phi,
                                                      double beta_g, arma::uword m_r,
                                                      arma::uword lx, arma::uword ly)
{
    if (beta_g <= 0.0)
        throw std::invalid_argument("uplink_channels: beta_g must be positive");
    arma::cx_rowvec a_i_t = upa_response(varphi, phi, lx, ly).st();
    arma::cx_vec b_x = ula_response(phi, m_r);
    arma::cx_vec b_y = ula_response(varphi, m_r);
    double amp = std::sqrt(beta_g);
    return {amp * (b_x * a_i_t), amp * (b_y * a_i_t)};
}

arma::cx_vec device_channel(const Geometry &geom, double beta_h,
                            arma::uword lx, arma::uword ly)
{
    if (beta_h <= 0.0)
        throw std::invalid_argument("device_channel: beta_h must be positive");
    if (lx == 0 || ly == 0)
        throw std::invalid_argument("device_channel: zero panel dimension");

    double cx = device_cos_x(geom);
    double cy = device_cos_y(geom);
    double amp = std::sqrt(beta_h);
    arma::cx_vec h(lx * ly);
    for (arma::uword ix = 0; ix < lx; ++ix)
        for (arma::uword iy = 0; iy < ly; ++iy)
            h(ix * ly + iy) = amp * std::polar(1.0, -pi * (static_cast<double>(ix) * cx +
                                                           static_cast<double>(iy) * cy));
    return h;
}

ChannelSet make_channel_set(const Geometry &geom, double beta0, double beta_h,
                            arma::uword m_t, arma::uword m_r,
                            arma::uword lx, arma::uword ly)
{
    PathAngles path = angles_from_geometry(geom);
    ChannelSet set;
    set.distance = path.distance;
    set.beta_g = beta0 / (path.distance * path.distance);
    set.downlink = downlink_channel(path.varphi, path.phi, set.beta_g, m_t, lx, ly);
    auto up = uplink_channels(path.varphi, path.phi, set.beta_g, m_r, lx, ly);
    set.uplink_x = std::move(up.first);
    set.uplink_y = std::move(up.second);
    set.device = device_channel(geom, beta_h, lx, ly);
    return set;
}

} // namespace iosim
