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

#ifndef IOSIM_RATES_HPP
#define IOSIM_RATES_HPP

#include <cstdint>

#include <armadillo>

#include "iosim/ios_control.hpp"
#include "iosim/system_config.hpp"

namespace iosim
{

/*!
 * Everything the per-slot SNR and rate expressions need, flattened out of
 * the config so the hot loops never touch it. `pointing` carries the angles
 * the beams are steered to; var_x / var_y the angle error variances around
 * them that the expectations average over; a_var_x / a_var_y the angle
 * measurement variance scales at full sensing allocation.
 */
struct SlotContext
{
    double p_max_w = 0.1;
    double beta_g = 0.0;
    double beta_h = 1e-4;
    double sigma2_s_w = 1e-10;
    double sigma2_c_w = 1e-10;
    double slot_len_s = 0.02;
    double symbol_len_s = 1e-7;
    arma::uword m_t = 8;
    arma::uword m_r = 8;
    arma::uword lx = 80;
    arma::uword ly = 80;

    BeamPointing pointing;
    double eta = 0.0;
    double beta_r = 0.0;

    double var_x = 0.1;   // radians^2 around pointing.varphi_point
    double var_y = 0.1;   // radians^2 around pointing.phi_point
    double a_var_x = 0.0; // radians^2 at eta = beta_r = 1
    double a_var_y = 0.0;
    int k_max_x = 3;
    int k_max_y = 3;
};

/*!
 * Build a context from the config at a given range. Pointing angles are
 * clamped to the working interval, variances floored so that noiseless
 * configurations stay evaluable, series truncation picked per variance, and
 * the measurement scales derived from the echo budget at this range.
 */
SlotContext make_slot_context(const SystemConfig &cfg, double distance_m,
                              const BeamPointing &pointing, double eta,
                              double beta_r, double var_x, double var_y);

struct McEstimate
{
    double mean = 0.0;
    double std_err = 0.0; // standard error of the mean
};

/*!
 * Echo SNR by direct sampling: per trial, draw the true angles around the
 * pointing with the context variances, evaluate the kernel product
 *   F_ly(2 dcos phi) * F_lx(2 dcos varphi) * F_mt(dcos varphi) * F_mr(dcos varphi)
 * and scale the sample mean by beta_r * eta * L * slot_len * p_max *
 * beta_g^2 / (symbol_len * sigma2_s). Deterministic for a fixed seed: trial
 * i draws from its own stream and accumulation runs in index order.
 */
McEstimate echo_snr_sampled(const SlotContext &ctx, arma::uword trials,
                            std::uint64_t seed);

/*!
 * Expected echo SNR in closed form:
 *   beta_r * eta * slot_len * p_max * beta_g^2 * L * m_t * m_r
 *     * h(varphi, var_x) * h(phi, var_y) / (symbol_len * sigma2_s).
 */
double echo_snr_expected(const SlotContext &ctx);

// Link budget constant of the refracted path: 4 p_max beta_g beta_h L m_t
// over the receiver noise. The factor 4 absorbs the one-hop cosine offsets
// being half as wide as the round-trip ones.
double comm_budget(const SlotContext &ctx);

/*!
 * Achievable rate while the surface splits power for sensing:
 * log2(1 + (1 - beta_r) * comm_budget * h(varphi, var_x) * h(phi, var_y)).
 * An upper bound on the sampled mean rate (Jensen), tight at small variance.
 */
double rate_sensing_phase(const SlotContext &ctx);

/*!
 * Achievable rate of the refract-everything phase, evaluated at the
 * post-measurement variances the sensing sub-slot bought:
 * log2(1 + comm_budget * h(varphi, tracked_var_x) * h(phi, tracked_var_y)).
 */
double rate_comm_phase(const SlotContext &ctx, double tracked_var_x,
                       double tracked_var_y);

/*!
 * Explicit allocation model of the slot rate as a function of (eta, beta_r):
 *
 *   eta * log2(1 + c1 (1 - beta_r))
 *   + (1 - eta) * log2(1 + c1 sqrt((var_x eta beta_r + a_x)
 *                                  (var_y eta beta_r + a_y) / (a_x a_y)))
 *
 * with c1 = 2 p_max beta_g beta_h L m_t
 *           / (pi sin(varphi) sin(phi) sqrt(var_x var_y) sigma2_c).
 * Drops the kernel tails entirely, which makes the trade-off analytic; the
 * tests pin it against the series-based rates.
 */
double rate_allocation_model(const SlotContext &ctx);

// The c1 constant above, exposed for tests and diagnostics.
double allocation_model_c1(const SlotContext &ctx);

struct RateBreakdown
{
    double rate_sc = 0.0;   // bits/s/Hz during the sensing sub-slot
    double rate_c = 0.0;    // bits/s/Hz during the refract-only remainder
    double rate_avg = 0.0;  // eta-weighted combination, exact by construction
    double snr_echo = 0.0;  // linear, expected form
};

// Bundle the three per-slot rates plus the echo SNR for recording.
RateBreakdown slot_rate_breakdown(const SlotContext &ctx, double tracked_var_x,
                                  double tracked_var_y);

// Same, but with separate contexts for the two sub-slots. The harness points
// the first at the predicted angles and the second at the tracked ones once
// the measurement is in; eta and the echo SNR come from the first.
RateBreakdown slot_rate_breakdown(const SlotContext &sensing_ctx,
                                  const SlotContext &comm_ctx,
                                  double tracked_var_x, double tracked_var_y);

} // namespace iosim

#endif
