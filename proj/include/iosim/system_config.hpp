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

#ifndef IOSIM_SYSTEM_CONFIG_HPP
#define IOSIM_SYSTEM_CONFIG_HPP

#include <cstdint>
#include <string>

#include <armadillo>

namespace iosim
{

/*!
 * @brief Scenario description, filled from a flat "key = value" config file.
 *
 * Linear units throughout; dB and dBm appear only at the parsing boundary.
 * Powers in watt, distances in metre, angles in radian, variances in the
 * square of the tracked unit.
 */
struct SystemConfig
{
    // Timing
    double t_total_s = 10.0;     // length of the drive-by
    arma::uword n_slots = 500;   // tracked slots over t_total_s
    double slot_len_s = 0.02;    // one tracking slot
    double symbol_len_s = 1e-7;  // one transmit symbol

    // Array sizes
    arma::uword m_t = 8;  // transmit elements at the road site
    arma::uword m_r = 8;  // receive elements per axis at the road site
    arma::uword l_x = 80; // surface elements, row axis
    arma::uword l_y = 80; // surface elements, column axis

    // Power and noise (linear)
    double p_max_w = 0.1;
    double beta0 = 1e-3;        // channel power at 1 m reference distance
    double sigma2_s_w = 1e-10;  // sensing receiver noise power
    double sigma2_c_w = 1e-10;  // communication receiver noise power
    double sigma2_r = 1e-10;    // angle-variance scale of the matched filter bank
    double f_c_hz = 30e9;

    // Process noise of the kinematic model, applied once per slot
    double sigma2_omega_varphi = 0.1; // row-axis angle, rad^2
    double sigma2_omega_phi = 0.1;    // column-axis angle, rad^2
    double sigma2_omega_d = 0.25;     // distance, m^2
    double sigma2_omega_v = 0.01;     // speed, (m/s)^2

    // Measurement-variance scales for distance and speed. The angle scales
    // come out of the echo signal budget instead; see compute_echo_noise_scale.
    double a_d_m2 = 1.0;
    double a_v_m2s2 = 0.25;

    // Far end of the refracted link
    double beta_h = 1e-4;      // device channel power
    double psi_u_x_rad = 0.6;  // device azimuth
    double psi_u_z_rad = 1.1;  // device elevation

    // Geometry; the vehicle drives along +x at constant speed
    arma::vec3 rsu_pos = {0.0, 0.0, 20.0};
    arma::vec3 veh_pos0 = {-100.0, 20.0, 0.0};
    double speed_mps = 20.0;

    std::uint64_t seed = 1;

    // Free-space two-hop pathloss at a given range
    double beta_g(double distance_m) const { return beta0 / (distance_m * distance_m); }

    arma::uword surface_elements() const { return l_x * l_y; }

    // Symbols available for the echo matched filter in a full slot
    double symbols_per_slot() const { return slot_len_s / symbol_len_s; }
};

} // namespace iosim

#endif
