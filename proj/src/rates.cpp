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

#include "iosim/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "iosim/rng.hpp"
#include "iosim/tracking.hpp"

namespace iosim
{

namespace
{

void check_fractions(const SlotContext &ctx)
{
    if (ctx.eta < 0.0 || ctx.eta > 1.0 || ctx.beta_r < 0.0 || ctx.beta_r > 1.0)
        throw std::invalid_argument("slot context: eta and beta_r must lie in [0, 1]");
}

double surface_count(const SlotContext &ctx)
{
    return static_cast<double>(ctx.lx) * static_cast<double>(ctx.ly);
}

double log2_1p(double x)
{
    return std::log1p(x) * 1.4426950408889634073599246810019;
}

} // namespace

SlotContext make_slot_context(const SystemConfig &cfg, double distance_m,
                              const BeamPointing &pointing, double eta,
                              double beta_r, double var_x, double var_y)
{
    if (distance_m <= 0.0)
        throw std::invalid_argument("make_slot_context: distance must be positive");

    SlotContext ctx;
    ctx.p_max_w = cfg.p_max_w;
    ctx.beta_g = cfg.beta_g(distance_m);
    ctx.beta_h = cfg.beta_h;
    ctx.sigma2_s_w = cfg.sigma2_s_w;
    ctx.sigma2_c_w = cfg.sigma2_c_w;
    ctx.slot_len_s = cfg.slot_len_s;
    ctx.symbol_len_s = cfg.symbol_len_s;
    ctx.m_t = cfg.m_t;
    ctx.m_r = cfg.m_r;
    ctx.lx = cfg.l_x;
    ctx.ly = cfg.l_y;

    ctx.pointing.varphi_point = clamp_angle(pointing.varphi_point);
    ctx.pointing.phi_point = clamp_angle(pointing.phi_point);
    ctx.eta = eta;
    ctx.beta_r = beta_r;
    ctx.var_x = floor_variance(var_x);
    ctx.var_y = floor_variance(var_y);
    ctx.k_max_x = suggest_k_max(ctx.var_x);
    ctx.k_max_y = suggest_k_max(ctx.var_y);

    EchoNoiseScale scale = compute_echo_noise_scale(cfg, ctx.pointing.varphi_point,
                                                    ctx.pointing.phi_point, distance_m);
    ctx.a_var_x = scale.a_varphi;
    ctx.a_var_y = scale.a_phi;
    check_fractions(ctx);
    return ctx;
}

McEstimate echo_snr_sampled(const SlotContext &ctx, arma::uword trials,
                            std::uint64_t seed)
{
    check_fractions(ctx);
    if (trials < 1)
        throw std::invalid_argument("echo_snr_sampled: need at least one trial");

    double sd_x = std::sqrt(ctx.var_x);
    double sd_y = std::sqrt(ctx.var_y);
    double cos_vp = std::cos(ctx.pointing.varphi_point);
    double cos_p = std::cos(ctx.pointing.phi_point);

    // Welford running moments, accumulated in trial order.
    double mean = 0.0;
    double m2 = 0.0;
    for (arma::uword i = 0; i < trials; ++i)
    {
        StreamRng rng(seed, i);
        double true_vp = ctx.pointing.varphi_point + sd_x * rng.normal();
        double true_p = ctx.pointing.phi_point + sd_y * rng.normal();
        double dx = std::cos(true_vp) - cos_vp;
        double dy = std::cos(true_p) - cos_p;
        double sample = fejer_kernel(2.0 * dy, ctx.ly) * fejer_kernel(2.0 * dx, ctx.lx) *
                        fejer_kernel(dx, ctx.m_t) * fejer_kernel(dx, ctx.m_r);
        double delta = sample - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (sample - mean);
    }

    double n = static_cast<double>(trials);
    double scale = ctx.beta_r * ctx.eta * surface_count(ctx) * ctx.slot_len_s *
                   ctx.p_max_w * ctx.beta_g * ctx.beta_g /
                   (ctx.symbol_len_s * ctx.sigma2_s_w);

    McEstimate out;
    out.mean = scale * mean;
    out.std_err = trials > 1 ? scale * std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    return out;
}

double echo_snr_expected(const SlotContext &ctx)
{
    check_fractions(ctx);
    double h_x = h_series(ctx.pointing.varphi_point, ctx.var_x, ctx.k_max_x);
    double h_y = h_series(ctx.pointing.phi_point, ctx.var_y, ctx.k_max_y);
    return ctx.beta_r * ctx.eta * ctx.slot_len_s * ctx.p_max_w * ctx.beta_g *
           ctx.beta_g * surface_count(ctx) * static_cast<double>(ctx.m_t) *
           static_cast<double>(ctx.m_r) * h_x * h_y /
           (ctx.symbol_len_s * ctx.sigma2_s_w);
}

double comm_budget(const SlotContext &ctx)
{
    return 4.0 * ctx.p_max_w * ctx.beta_g * ctx.beta_h * surface_count(ctx) *
           static_cast<double>(ctx.m_t) / ctx.sigma2_c_w;
}

double rate_sensing_phase(const SlotContext &ctx)
{
    check_fractions(ctx);
    double h_x = h_series(ctx.pointing.varphi_point, ctx.var_x, ctx.k_max_x);
    double h_y = h_series(ctx.pointing.phi_point, ctx.var_y, ctx.k_max_y);
    return log2_1p((1.0 - ctx.beta_r) * comm_budget(ctx) * h_x * h_y);
}

double rate_comm_phase(const SlotContext &ctx, double tracked_var_x,
                       double tracked_var_y)
{
    double vx = floor_variance(tracked_var_x);
    double vy = floor_variance(tracked_var_y);
    double h_x = h_series(ctx.pointing.varphi_point, vx, suggest_k_max(vx));
    double h_y = h_series(ctx.pointing.phi_point, vy, suggest_k_max(vy));
    return log2_1p(comm_budget(ctx) * h_x * h_y);
}

double allocation_model_c1(const SlotContext &ctx)
{
    double sin_x = std::sin(ctx.pointing.varphi_point);
    double sin_y = std::sin(ctx.pointing.phi_point);
    return 2.0 * ctx.p_max_w * ctx.beta_g * ctx.beta_h * surface_count(ctx) *
           static_cast<double>(ctx.m_t) /
           (pi * sin_x * sin_y * std::sqrt(ctx.var_x * ctx.var_y) * ctx.sigma2_c_w);
}

double rate_allocation_model(const SlotContext &ctx)
{
    check_fractions(ctx);
    if (ctx.a_var_x <= 0.0 || ctx.a_var_y <= 0.0)
        throw std::invalid_argument("rate_allocation_model: measurement scales unset");

    double c1 = allocation_model_c1(ctx);
    double alloc = ctx.eta * ctx.beta_r;
    // The ratio under the root is written so that a zero allocation gives
    // exactly (a_x * a_y) / (a_x * a_y) = 1 and the two phases coincide.
    double grown = (ctx.var_x * alloc + ctx.a_var_x) * (ctx.var_y * alloc + ctx.a_var_y);
    double arg = c1 * std::sqrt(grown / (ctx.a_var_x * ctx.a_var_y));
    return ctx.eta * log2_1p(c1 * (1.0 - ctx.beta_r)) + (1.0 - ctx.eta) * log2_1p(arg);
}

RateBreakdown slot_rate_breakdown(const SlotContext &ctx, double tracked_var_x,
                                  double tracked_var_y)
{
    return slot_rate_breakdown(ctx, ctx, tracked_var_x, tracked_var_y);
}

RateBreakdown slot_rate_breakdown(const SlotContext &sensing_ctx,
                                  const SlotContext &comm_ctx,
                                  double tracked_var_x, double tracked_var_y)
{
    RateBreakdown out;
    out.rate_sc = rate_sensing_phase(sensing_ctx);
    out.rate_c = rate_comm_phase(comm_ctx, tracked_var_x, tracked_var_y);
    out.rate_avg = sensing_ctx.eta * out.rate_sc + (1.0 - sensing_ctx.eta) * out.rate_c;
    out.snr_echo = echo_snr_expected(sensing_ctx);
    return out;
}

} // namespace iosim
