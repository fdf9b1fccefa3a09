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

#include "iosim/ios_control.hpp"

#include <cmath>
#include <stdexcept>

namespace iosim
{

namespace
{

double wrap_phase(double a)
{
    double two_pi = 2.0 * pi;
    double w = std::fmod(a, two_pi);
    if (w < 0.0)
        w += two_pi;
    // fmod can land exactly on 2 pi after the correction when a is a tiny
    // negative number; fold that back to 0.
    if (w >= two_pi)
        w = 0.0;
    return w;
}

arma::vec phase_ramp(double grad_x, double grad_y, arma::uword lx, arma::uword ly,
                     double theta0)
{
    if (lx == 0 || ly == 0)
        throw std::invalid_argument("phase ramp: zero panel dimension");
    arma::vec phases(lx * ly);
    for (arma::uword ix = 0; ix < lx; ++ix)
        for (arma::uword iy = 0; iy < ly; ++iy)
            phases(ix * ly + iy) = wrap_phase(pi * (static_cast<double>(ix) * grad_x +
                                                    static_cast<double>(iy) * grad_y) +
                                              theta0);
    return phases;
}

void check_split(double beta_r)
{
    if (beta_r < 0.0 || beta_r > 1.0)
        throw std::invalid_argument("power split must lie in [0, 1]");
}

arma::cx_mat diag_operator(const arma::vec &phases, double split)
{
    arma::cx_vec d(phases.n_elem);
    double amp = std::sqrt(split);
    for (arma::uword l = 0; l < phases.n_elem; ++l)
        d(l) = amp * std::polar(1.0, phases(l));
    return arma::diagmat(d);
}

} // namespace

arma::vec optimal_reflect_phases(const BeamPointing &point, arma::uword lx,
                                 arma::uword ly, double theta0)
{
    double gx = -2.0 * std::cos(point.varphi_point);
    double gy = 2.0 * std::cos(point.phi_point);
    return phase_ramp(gx, gy, lx, ly, theta0);
}

arma::vec optimal_refract_phases(const BeamPointing &point, double device_cos_x,
                                 double device_cos_y, arma::uword lx,
                                 arma::uword ly, double theta0)
{
    double gx = -std::cos(point.varphi_point) + device_cos_x;
    double gy = std::cos(point.phi_point) + device_cos_y;
    return phase_ramp(gx, gy, lx, ly, theta0);
}

IOSProfile make_sensing_profile(const BeamPointing &point, double device_cos_x,
                                double device_cos_y, arma::uword lx, arma::uword ly,
                                double beta_r, double theta0)
{
    check_split(beta_r);
    IOSProfile p;
    p.lx = lx;
    p.ly = ly;
    p.refract_phases = optimal_refract_phases(point, device_cos_x, device_cos_y,
                                              lx, ly, theta0);
    p.reflect_phases = optimal_reflect_phases(point, lx, ly, theta0);
    p.beta_r = beta_r;
    p.beta_t = 1.0 - beta_r;
    return p;
}

IOSProfile make_comm_profile(const BeamPointing &point, double device_cos_x,
                             double device_cos_y, arma::uword lx, arma::uword ly,
                             double theta0)
{
    IOSProfile p = make_sensing_profile(point, device_cos_x, device_cos_y,
                                        lx, ly, 0.0, theta0);
    // Reflect face is off; keep the ramp anyway so diagnostics stay readable.
    return p;
}

arma::cx_mat reflect_matrix(const IOSProfile &profile)
{
    return diag_operator(profile.reflect_phases, profile.beta_r);
}

arma::cx_mat refract_matrix(const IOSProfile &profile)
{
    return diag_operator(profile.refract_phases, profile.beta_t);
}

double passive_beamforming_gain(const IOSProfile &profile, const BeamPointing &point,
                                double true_varphi, double true_phi)
{
    double dx = std::cos(true_varphi) - std::cos(point.varphi_point);
    double dy = std::cos(true_phi) - std::cos(point.phi_point);
    return profile.beta_r * static_cast<double>(profile.lx) *
           static_cast<double>(profile.ly) * fejer_kernel(2.0 * dx, profile.lx) *
           fejer_kernel(2.0 * dy, profile.ly);
}

BeamGains tx_rx_beam_gains(const BeamPointing &point, double true_varphi,
                           double true_phi, arma::uword m_t, arma::uword m_r,
                           double p_max)
{
    if (p_max <= 0.0)
        throw std::invalid_argument("tx_rx_beam_gains: p_max must be positive");
    double dx = std::cos(true_varphi) - std::cos(point.varphi_point);
    double dy = std::cos(true_phi) - std::cos(point.phi_point);
    BeamGains g;
    g.tx = p_max * fejer_kernel(dx, m_t);
    g.rx_x = fejer_kernel(dx, m_r);
    g.rx_y = fejer_kernel(dy, m_r);
    return g;
}

arma::cx_vec tx_beamformer(double varphi_point, arma::uword m_t, double p_max)
{
    if (p_max <= 0.0)
        throw std::invalid_argument("tx_beamformer: p_max must be positive");
    return std::sqrt(p_max / static_cast<double>(m_t)) *
           arma::conj(ula_response(varphi_point, m_t));
}

arma::cx_vec rx_combiner(double angle_point, arma::uword m_r)
{
    return (1.0 / std::sqrt(static_cast<double>(m_r))) *
           ula_response(angle_point, m_r);
}

} // namespace iosim
