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

#ifndef IOSIM_CHANNEL_HPP
#define IOSIM_CHANNEL_HPP

#include <utility>

#include <armadillo>

#include "iosim/core_math.hpp"

namespace iosim
{

/*!
 * Placement of the link ends. The surface rides on the vehicle roof, so the
 * sensed path runs road-site unit to vehicle; the served device sits at a
 * fixed azimuth / elevation relative to the surface and moves with it.
 */
struct Geometry
{
    arma::vec3 rsu_pos{0.0, 0.0, 0.0};
    arma::vec3 veh_pos{0.0, 0.0, 0.0};
    double psi_u_x_rad = 0.0;          // device azimuth
    double psi_u_z_rad = 0.5 * pi;     // device elevation
};

struct PathAngles
{
    double varphi = 0.0;   // angle against the x-axis arrays, radians
    double phi = 0.0;      // angle against the y-axis array, radians
    double distance = 0.0; // metres
};

/*!
 * Array angles and range of the road-site-unit-to-vehicle path. Writing
 * u = vehicle - rsu, the azimuth/elevation pair of the path collapses to
 * direction cosines of u: sin(elev) cos(azim) = u_x / d and
 * sin(elev) sin(azim) = u_y / d, so cos(varphi) = u_x / d and
 * cos(phi) = u_y / d without ever forming the spherical pair. Angles are the
 * raw arccos values in [0, pi]; callers clamp before dividing by sin.
 */
PathAngles angles_from_geometry(const Geometry &geom);

// Direction cosines of the device path on the two surface axes
double device_cos_x(const Geometry &geom);
double device_cos_y(const Geometry &geom);

/*!
 * Forward channel, size (lx*ly) x m_t: sqrt(beta_g) times the outer product
 * of the surface response at (varphi, phi) with the plain transpose of the
 * transmit array response at varphi. Rank 1 by construction. Downstream
 * expressions couple through the transpose, h^T Theta H f, so the transmit
 * beamformer that maximizes gain is the conjugated steering vector.
 */
arma::cx_mat downlink_channel(double varphi, double phi, double beta_g,
                              arma::uword m_t, arma::uword lx, arma::uword ly);

/*!
 * Echo return channels to the two receive arrays, each m_r x (lx*ly).
 * The first pairs the x-axis array with the column-angle response b(phi),
 * the second the y-axis array with b(varphi). That pairing follows the
 * channel definitions; the echo budget pairs the x-axis output with
 * the varphi offsets instead, and the simulation follows the budget (the
 * swap is a pure relabeling of two identically sized arrays).
 */
std::pair<arma::cx_mat, arma::cx_mat> uplink_channels(double varphi, double phi,
                                                      double beta_g, arma::uword m_r,
                                                      arma::uword lx, arma::uword ly);

/*!
 * Quasi-static surface-to-device channel, length lx*ly. Entries have
 * magnitude sqrt(beta_h) and linear phase ramps -pi*ix*Phi_u, -pi*iy*Omega_u
 * set by the device direction cosines.
 */
arma::cx_vec device_channel(const Geometry &geom, double beta_h,
                            arma::uword lx, arma::uword ly);

// Everything the link needs for one slot, bundled for the harness.
struct ChannelSet
{
    arma::cx_mat downlink;  // (lx*ly) x m_t
    arma::cx_mat uplink_x;  // m_r x (lx*ly)
    arma::cx_mat uplink_y;  // m_r x (lx*ly)
    arma::cx_vec device;    // lx*ly
    double beta_g = 0.0;
    double distance = 0.0;
};

ChannelSet make_channel_set(const Geometry &geom, double beta0, double beta_h,
                            arma::uword m_t, arma::uword m_r,
                            arma::uword lx, arma::uword ly);

} // namespace iosim

#endif
