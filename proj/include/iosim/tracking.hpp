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

#ifndef IOSIM_TRACKING_HPP
#define IOSIM_TRACKING_HPP

#include <armadillo>

#include "iosim/system_config.hpp"

namespace iosim
{

// Kinematic state of the tracked vehicle as seen from the road site unit.
struct VehicleState
{
    double varphi = 0.5 * 3.14159265358979323846; // x-axis angle, radians
    double phi = 0.5 * 3.14159265358979323846;    // y-axis angle, radians
    double d = 1.0;                               // range, metres
    double v = 0.0;                               // speed, metres/second
};

arma::vec4 state_to_vec(const VehicleState &s);
VehicleState vec_to_state(const arma::vec4 &x);

// Range never collapses through the road plane; the filter state keeps a
// floor well below any distance the scenario geometry can produce.
constexpr double min_distance_m = 0.1;

// Saturation bound for MSE entries during open-loop divergence. Large
// enough that every variance above it is indistinguishable from "uniform
// angle" in the rate expressions, small enough that squaring stays finite.
constexpr double mse_cap = 1e30;

/*!
 * One step of the kinematic model: the angles drift with the angular rate
 * v/d projected on each axis, the range shrinks by the radial speed, the
 * speed is constant. Angles are re-clamped to the working interval and the
 * range to min_distance_m. The model is the filter's view of the motion;
 * ground truth in the simulation comes from exact geometry instead.
 */
VehicleState state_evolve(const VehicleState &s, double dt);
VehicleState state_evolve(const VehicleState &s, double dt, const arma::vec4 &noise);

// Analytic partial derivatives of the noiseless step at `s`.
arma::mat44 evolution_jacobian(const VehicleState &s, double dt);

/*!
 * Filter belief carried across slots. `mse` is the prediction MSE right
 * after predict() and the posterior MSE right after update(). q_measure is
 * refreshed every slot from the sensing allocation before update() runs.
 */
struct KalmanBelief
{
    VehicleState predicted;
    VehicleState tracked;
    arma::mat44 mse;
    arma::mat44 q_process;
    arma::mat44 q_measure;
};

// Propagate tracked state and MSE one slot ahead: predicted = step(tracked),
// mse = G mse G^T + q_process, re-symmetrized.
KalmanBelief kalman_predict(const KalmanBelief &belief, double dt);

// Blend a measurement into the prediction with gain K = M (Qz + M)^-1.
KalmanBelief kalman_update(const KalmanBelief &belief, const VehicleState &measurement);

/*!
 * Per-angle measurement noise for a sensing sub-slot of fraction eta and
 * reflect split beta_r. The scale constants are the variances at full
 * allocation; variance grows as 1/(eta beta_r). A zero allocation yields no
 * echo at all, reported through `available` rather than an infinite float.
 */
struct MeasurementVariances
{
    bool available = false;
    double var_x = 0.0; // radians^2 on the varphi measurement
    double var_y = 0.0; // radians^2 on the phi measurement
};

MeasurementVariances measurement_variances(double a_varphi, double a_phi,
                                           double eta, double beta_r);

/*!
 * Closed-form posterior variance of one angle after a scalar update:
 * prior * meas / (prior + meas) with meas = a_scale / (eta beta_r). At zero
 * allocation this degenerates to the prior, which is also the correct limit.
 */
double tracked_angle_variance(double prior_var, double a_scale, double eta,
                              double beta_r);

// Scale constants of the angle measurement noise at full sensing allocation.
struct EchoNoiseScale
{
    double a_varphi = 0.0; // radians^2
    double a_phi = 0.0;    // radians^2
};

/*!
 * Variance scale of the matched-filter angle estimates, inversely
 * proportional to the full-allocation echo budget:
 *
 *   a = symbol_len * sigma2_s * sigma2_r
 *       / (slot_len * p_max * beta_g^2 * L * m_t * m_r * h(varphi) * h(phi) * sin^2)
 *
 * with h evaluated at the per-slot prior angle variances and beta_g at the
 * given range. The caller passes the angles the beams are pointed at.
 */
EchoNoiseScale compute_echo_noise_scale(const SystemConfig &cfg, double varphi,
                                        double phi, double distance_m);

} // namespace iosim

#endif
