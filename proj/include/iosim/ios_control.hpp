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

#ifndef IOSIM_IOS_CONTROL_HPP
#define IOSIM_IOS_CONTROL_HPP

#include <armadillo>

#include "iosim/core_math.hpp"

namespace iosim
{

// Angles the beams are steered toward. During sensing these come from the
// one-step prediction; after a measurement they come from the tracked state.
struct BeamPointing
{
    double varphi_point = 0.5 * pi;
    double phi_point = 0.5 * pi;
};

/*!
 * One surface configuration: per-element refract and reflect phases plus the
 * common power split. Element order matches upa_response (row-major,
 * ix * ly + iy). beta_t + beta_r = 1 always; the communication-only phase
 * simply uses beta_r = 0.
 */
struct IOSProfile
{
    arma::uword lx = 1;
    arma::uword ly = 1;
    arma::vec refract_phases; // radians in [0, 2 pi)
    arma::vec reflect_phases;
    double beta_t = 1.0;
    double beta_r = 0.0;
};

/*!
 * Reflect phases that steer the echo back at the road site unit when the
 * vehicle sits at the pointing angles. The element phase is a plane ramp
 *   pi * ix * (-2 cos(varphi_point)) + pi * iy * (+2 cos(phi_point)) + theta0
 * wrapped to [0, 2 pi). The factor 2 undoes the double phase pickup of the
 * round trip over the same aperture; the sign flip between the axes matches
 * the sign split in upa_response.
 */
arma::vec optimal_reflect_phases(const BeamPointing &point, arma::uword lx,
                                 arma::uword ly, double theta0 = 0.0);

/*!
 * Refract phases that hand the incident beam over to the device. Ramp
 * gradients are -cos(varphi_point) + device_cos_x along rows and
 * +cos(phi_point) + device_cos_y along columns; single pass through the
 * aperture, so no factor 2.
 */
arma::vec optimal_refract_phases(const BeamPointing &point, double device_cos_x,
                                 double device_cos_y, arma::uword lx,
                                 arma::uword ly, double theta0 = 0.0);

// Full sensing-phase profile: optimal phases on both faces, split beta_r.
IOSProfile make_sensing_profile(const BeamPointing &point, double device_cos_x,
                                double device_cos_y, arma::uword lx, arma::uword ly,
                                double beta_r, double theta0 = 0.0);

// Communication-only profile: all power refracted, reflect face idle.
IOSProfile make_comm_profile(const BeamPointing &point, double device_cos_x,
                             double device_cos_y, arma::uword lx, arma::uword ly,
                             double theta0 = 0.0);

// Diagonal surface operators, sqrt(split) * exp(j phase) per element.
arma::cx_mat reflect_matrix(const IOSProfile &profile);
arma::cx_mat refract_matrix(const IOSProfile &profile);

/*!
 * Round-trip surface gain |a^T Theta_R a|^2 for a profile built by
 * optimal_reflect_phases at `point` while the vehicle actually sits at the
 * true angles. Evaluates the closed product
 *   beta_r * lx * ly * F_lx(2 dcos varphi) * F_ly(2 dcos phi)
 * which the tests pin against the direct quadratic form.
 */
double passive_beamforming_gain(const IOSProfile &profile, const BeamPointing &point,
                                double true_varphi, double true_phi);

struct BeamGains
{
    double tx = 0.0;   // |a^T f|^2, watts
    double rx_x = 0.0; // |v^H b|^2 at the x-axis array, dimensionless
    double rx_y = 0.0; // same at the y-axis array
};

/*!
 * Array gains under pointing error: tx = p_max * F_mt(dcos varphi),
 * rx_x = F_mr(dcos varphi), rx_y = F_mr(dcos phi). The x-axis receive array
 * listens for the varphi offset and the y-axis one for phi, matching the
 * echo budget used for the measurement variances.
 */
BeamGains tx_rx_beam_gains(const BeamPointing &point, double true_varphi,
                           double true_phi, arma::uword m_t, arma::uword m_r,
                           double p_max);

/*!
 * Transmit beamformer of the road site unit: sqrt(p_max / m_t) times the
 * conjugated steering vector at the pointed angle. Conjugated because the
 * forward coupling is the plain transpose a^T f.
 */
arma::cx_vec tx_beamformer(double varphi_point, arma::uword m_t, double p_max);

// Receive combiner: unit-power steering at the pointed angle; applied as v^H.
arma::cx_vec rx_combiner(double angle_point, arma::uword m_r);

} // namespace iosim

#endif
