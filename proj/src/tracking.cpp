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

#include "iosim/tracking.hpp"

#include <cmath>
#include <stdexcept>

#include "iosim/core_math.hpp"

namespace iosim
{

arma::vec4 state_to_vec(const VehicleState &s)
{
    return arma::vec4{s.varphi, s.phi, s.d, s.v};
}

VehicleState vec_to_state(const arma::vec4 &x)
{
    return VehicleState{x(0), x(1), x(2), x(3)};
}

namespace
{

void check_cot(const VehicleState &s)
{
    if (std::abs(std::sin(s.phi)) < 1e-6)
        throw std::domain_error("state_evolve: phi too close to the array axis, "
                                "cot(phi) blows up");
}

} // namespace

VehicleState state_evolve(const VehicleState &s, double dt)
{
    check_cot(s);
    VehicleState out;
    double rate = s.v * dt / s.d;
    out.varphi = clamp_angle(s.varphi + rate * std::cos(s.varphi));
    out.phi = clamp_angle(s.phi + rate * (std::cos(s.phi) / std::sin(s.phi)));
    out.d = std::max(min_distance_m, s.d - s.v * dt * std::sin(s.varphi));
    out.v = s.v;
    return out;
}

VehicleState state_evolve(const VehicleState &s, double dt, const arma::vec4 &noise)
{
    VehicleState out = state_evolve(s, dt);
    out.varphi = clamp_angle(out.varphi + noise(0));
    out.phi = clamp_angle(out.phi + noise(1));
    out.d = std::max(min_distance_m, out.d + noise(2));
    out.v += noise(3);
    return out;
}

arma::mat44 evolution_jacobian(const VehicleState &s, double dt)
{
    check_cot(s);
    double sin_vp = std::sin(s.varphi);
    double cos_vp = std::cos(s.varphi);
    double sin_p = std::sin(s.phi);
    double cot_p = std::cos(s.phi) / sin_p;
    double rate = s.v * dt / s.d;

    arma::mat44 g(arma::fill::zeros);
    g(0, 0) = 1.0 - rate * sin_vp;
    g(0, 2) = -rate * cos_vp / s.d;
    g(0, 3) = dt * cos_vp / s.d;

    g(1, 1) = 1.0 - rate / (sin_p * sin_p);
    g(1, 2) = -rate * cot_p / s.d;
    g(1, 3) = dt * cot_p / s.d;

    g(2, 0) = -s.v * dt * cos_vp;
    g(2, 2) = 1.0;
    g(2, 3) = -dt * sin_vp;

    g(3, 3) = 1.0;
    return g;
}

KalmanBelief kalman_predict(const KalmanBelief &belief, double dt)
{
    KalmanBelief out = belief;
    arma::mat44 g = evolution_jacobian(belief.tracked, dt);
    out.predicted = state_evolve(belief.tracked, dt);
    arma::mat44 m = g * belief.mse * g.t() + belief.q_process;
    out.mse = 0.5 * (m + m.t());
    // A tracker running open loop past the range floor multiplies its MSE by
    // the squared Jacobian every slot; cap the entries so the divergence
    // saturates instead of overflowing to inf and then NaN. Any variance
    // this large already means "the angle is uniform", which the rate
    // expressions handle exactly.
    out.mse = arma::clamp(out.mse, -mse_cap, mse_cap);
    return out;
}

KalmanBelief kalman_update(const KalmanBelief &belief, const VehicleState &measurement)
{
    arma::mat44 innov_cov = belief.q_measure + belief.mse;
    arma::mat44 gain;
    // K = M (Qz + M)^-1, computed through a solve of the transposed system
    // rather than an explicit inverse.
    if (!arma::solve(gain, innov_cov.t(), belief.mse.t()))
        throw std::runtime_error("kalman_update: singular innovation covariance");
    gain = gain.t();

    KalmanBelief out = belief;
    arma::vec4 residual = state_to_vec(measurement) - state_to_vec(belief.predicted);
    arma::vec4 tracked = state_to_vec(belief.predicted) + gain * residual;
    tracked(0) = clamp_angle(tracked(0));
    tracked(1) = clamp_angle(tracked(1));
    tracked(2) = std::max(min_distance_m, tracked(2));
    out.tracked = vec_to_state(tracked);

    arma::mat44 m = (arma::mat44(arma::fill::eye) - gain) * belief.mse;
    out.mse = 0.5 * (m + m.t());
    return out;
}

MeasurementVariances measurement_variances(double a_varphi, double a_phi,
                                           double eta, double beta_r)
{
    if (a_varphi <= 0.0 || a_phi <= 0.0)
        throw std::invalid_argument("measurement_variances: scales must be positive");
    if (eta < 0.0 || eta > 1.0 || beta_r < 0.0 || beta_r > 1.0)
        throw std::invalid_argument("measurement_variances: eta and beta_r must "
                                    "lie in [0, 1]");
    MeasurementVariances out;
    double alloc = eta * beta_r;
    if (alloc <= 0.0)
        return out; // no echo, no measurement
    out.available = true;
    out.var_x = a_varphi / alloc;
    out.var_y = a_phi / alloc;
    return out;
}

double tracked_angle_variance(double prior_var, double a_scale, double eta,
                              double beta_r)
{
    if (prior_var < 0.0 || a_scale <= 0.0)
        throw std::invalid_argument("tracked_angle_variance: bad variance inputs");
    double alloc = eta * beta_r;
    if (alloc <= 0.0)
        return prior_var;
    // prior * meas / (prior + meas) with meas = a/(eta beta_r); multiplied
    // through by alloc to avoid forming the huge intermediate at tiny alloc.
    return prior_var * a_scale / (prior_var * alloc + a_scale);
}

EchoNoiseScale compute_echo_noise_scale(const SystemConfig &cfg, double varphi,
                                        double phi, double distance_m)
{
    double cvp = clamp_angle(varphi);
    double cp = clamp_angle(phi);
    double sin_vp = std::sin(cvp);
    double sin_p = std::sin(cp);
    double beta_g = cfg.beta_g(distance_m);
    double vy_x = floor_variance(cfg.sigma2_omega_varphi);
    double vy_y = floor_variance(cfg.sigma2_omega_phi);
    double h_vp = h_series(cvp, vy_x, suggest_k_max(vy_x));
    double h_p = h_series(cp, vy_y, suggest_k_max(vy_y));

    double num = cfg.symbol_len_s * cfg.sigma2_s_w * cfg.sigma2_r;
    double den = cfg.slot_len_s * cfg.p_max_w * beta_g * beta_g *
                 static_cast<double>(cfg.surface_elements()) *
                 static_cast<double>(cfg.m_t) * static_cast<double>(cfg.m_r) *
                 h_vp * h_p;

    EchoNoiseScale out;
    out.a_varphi = num / (den * sin_vp * sin_vp);
    out.a_phi = num / (den * sin_p * sin_p);
    return out;
}

} // namespace iosim
