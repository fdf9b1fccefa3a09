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

#include "iosim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

#include "iosim/channel.hpp"
#include "iosim/config_parse.hpp"
#include "iosim/core_math.hpp"
#include "iosim/ios_control.hpp"
#include "iosim/optimizer.hpp"
#include "iosim/rates.hpp"
#include "iosim/rng.hpp"
#include "iosim/tracking.hpp"

namespace iosim
{

namespace
{

// Ground truth at elapsed time t: straight drive along +x at constant speed,
// angles and range recomputed from exact geometry every slot.
VehicleState truth_at(const SystemConfig &cfg, double t_s, double *x_m = nullptr)
{
    Geometry geom;
    geom.rsu_pos = cfg.rsu_pos;
    geom.veh_pos = cfg.veh_pos0;
    geom.veh_pos(0) += cfg.speed_mps * t_s;
    geom.psi_u_x_rad = cfg.psi_u_x_rad;
    geom.psi_u_z_rad = cfg.psi_u_z_rad;
    PathAngles pa = angles_from_geometry(geom);
    if (x_m != nullptr)
        *x_m = geom.veh_pos(0);
    VehicleState s;
    s.varphi = pa.varphi;
    s.phi = pa.phi;
    s.d = pa.distance;
    s.v = cfg.speed_mps;
    return s;
}

arma::mat44 process_noise_matrix(const SystemConfig &cfg)
{
    arma::mat44 q(arma::fill::zeros);
    q(0, 0) = cfg.sigma2_omega_varphi;
    q(1, 1) = cfg.sigma2_omega_phi;
    q(2, 2) = cfg.sigma2_omega_d;
    q(3, 3) = cfg.sigma2_omega_v;
    return q;
}

/*!
 * Round-trip surface sum |sum_l a_l^2 exp(j theta_l)|^2 for one draw of
 * uniform reflect phases theta_l, with the element responses taken at the
 * true vehicle angles. With aligned phases this sum collapses to L^2; with
 * random phases it concentrates near L (incoherent addition), which is the
 * entire story of the refraction benchmark's weak echo.
 */
double random_reflect_power_sum(double true_varphi, double true_phi,
                                arma::uword lx, arma::uword ly, StreamRng &rng)
{
    std::complex<double> s(0.0, 0.0);
    const double cx = 2.0 * pi * std::cos(true_varphi);
    const double cy = 2.0 * pi * std::cos(true_phi);
    for (arma::uword ix = 0; ix < lx; ++ix)
    {
        const double row = cx * static_cast<double>(ix);
        for (arma::uword iy = 0; iy < ly; ++iy)
        {
            double ph = row - cy * static_cast<double>(iy) + 2.0 * pi * rng.uniform();
            s += std::complex<double>(std::cos(ph), std::sin(ph));
        }
    }
    return std::norm(s);
}

} // namespace

std::string scheme_name(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::proposed:
        return "proposed";
    case Scheme::refraction:
        return "refraction";
    case Scheme::prediction:
        return "prediction";
    }
    throw std::invalid_argument("scheme_name: unknown scheme");
}

Scheme scheme_from_name(const std::string &name)
{
    if (name == "proposed")
        return Scheme::proposed;
    if (name == "refraction")
        return Scheme::refraction;
    if (name == "prediction")
        return Scheme::prediction;
    throw std::invalid_argument("unknown scheme: " + name);
}

TrajectoryResult run_trajectory(const SystemConfig &cfg, Scheme scheme,
                                std::uint64_t seed)
{
    validate_config(cfg);

    TrajectoryResult out;
    out.scheme = scheme;
    out.slots.reserve(cfg.n_slots);

    const double dt = cfg.slot_len_s;
    const arma::mat44 q_omega = process_noise_matrix(cfg);

    // The filter opens on the true state blurred by one process draw, with
    // confidence to match. Stream 0 is reserved for this; each slot then
    // owns streams 1+2n (measurement noise) and 2+2n (auxiliary draws), so
    // schemes that skip a draw stay aligned with schemes that take it.
    KalmanBelief belief;
    belief.q_process = q_omega;
    belief.mse = q_omega;
    {
        VehicleState t0 = truth_at(cfg, 0.0);
        StreamRng init_rng(seed, 0);
        double n0 = std::sqrt(q_omega(0, 0)) * init_rng.normal();
        double n1 = std::sqrt(q_omega(1, 1)) * init_rng.normal();
        double n2 = std::sqrt(q_omega(2, 2)) * init_rng.normal();
        double n3 = std::sqrt(q_omega(3, 3)) * init_rng.normal();
        belief.tracked.varphi = clamp_angle(t0.varphi + n0);
        belief.tracked.phi = clamp_angle(t0.phi + n1);
        belief.tracked.d = std::max(min_distance_m, t0.d + n2);
        belief.tracked.v = t0.v + n3;
        belief.predicted = belief.tracked;
    }

    const SearchSpec search{};
    double rate_sum = 0.0;

    for (arma::uword n = 0; n < cfg.n_slots; ++n)
    {
        double x_m = 0.0;
        const VehicleState truth =
            truth_at(cfg, dt * static_cast<double>(n + 1), &x_m);

        belief = kalman_predict(belief, dt);
        const double prior_x = std::max(belief.mse(0, 0), 0.0);
        const double prior_y = std::max(belief.mse(1, 1), 0.0);
        const BeamPointing aim_pred{belief.predicted.varphi, belief.predicted.phi};

        const SlotContext plan_ctx = make_slot_context(
            cfg, belief.predicted.d, aim_pred, 0.0, 0.0, prior_x, prior_y);

        double eta = 0.0;
        double beta_r = 0.0;
        if (scheme != Scheme::prediction)
        {
            SlotDecision dec = optimize_slot(plan_ctx, search);
            eta = dec.eta_star;
            beta_r = dec.beta_r_star;
        }

        StreamRng meas_rng(seed, 1 + 2 * static_cast<std::uint64_t>(n));
        StreamRng aux_rng(seed, 2 + 2 * static_cast<std::uint64_t>(n));

        // Defaults for a slot with no echo: belief coasts on the prediction
        // and the angle variances stay at their priors.
        double tr_x = plan_ctx.var_x;
        double tr_y = plan_ctx.var_y;
        double echo_realized = 0.0;
        bool took_measurement = false;

        const double alloc = eta * beta_r;
        if (scheme == Scheme::proposed && alloc > 0.0)
        {
            MeasurementVariances mv = measurement_variances(
                plan_ctx.a_var_x, plan_ctx.a_var_y, eta, beta_r);
            if (mv.available)
            {
                VehicleState meas;
                meas.varphi = clamp_angle(
                    truth.varphi + std::sqrt(mv.var_x) * meas_rng.normal());
                meas.phi = clamp_angle(
                    truth.phi + std::sqrt(mv.var_y) * meas_rng.normal());
                meas.d = std::max(min_distance_m,
                                  truth.d + std::sqrt(cfg.a_d_m2 / alloc) *
                                                meas_rng.normal());
                meas.v = truth.v + std::sqrt(cfg.a_v_m2s2 / alloc) * meas_rng.normal();

                belief.q_measure.zeros();
                belief.q_measure(0, 0) = mv.var_x;
                belief.q_measure(1, 1) = mv.var_y;
                belief.q_measure(2, 2) = cfg.a_d_m2 / alloc;
                belief.q_measure(3, 3) = cfg.a_v_m2s2 / alloc;
                belief = kalman_update(belief, meas);

                tr_x = tracked_angle_variance(plan_ctx.var_x, plan_ctx.a_var_x,
                                              eta, beta_r);
                tr_y = tracked_angle_variance(plan_ctx.var_y, plan_ctx.a_var_y,
                                              eta, beta_r);
                took_measurement = true;
            }
        }
        else if (scheme == Scheme::refraction && alloc > 0.0)
        {
            // The scrambled reflect face returns an incoherent echo; its SNR
            // is the realized quadratic form for this slot's phase draw, and
            // the matched filter's angle variance follows from that SNR.
            double power_sum = random_reflect_power_sum(truth.varphi, truth.phi,
                                                        cfg.l_x, cfg.l_y, aux_rng);
            BeamGains g = tx_rx_beam_gains(aim_pred, truth.varphi, truth.phi,
                                           cfg.m_t, cfg.m_r, cfg.p_max_w);
            double bg = cfg.beta_g(truth.d);
            double pref = eta * cfg.slot_len_s * bg * bg * beta_r * power_sum /
                          (cfg.symbol_len_s * cfg.sigma2_s_w);
            double snr_x = pref * g.tx * g.rx_x;
            double snr_y = pref * g.tx * g.rx_y;
            echo_realized = snr_x;

            double sin_x = std::sin(clamp_angle(truth.varphi));
            double sin_y = std::sin(clamp_angle(truth.phi));
            if (snr_x > 1e-300 && snr_y > 1e-300)
            {
                double mvx = cfg.sigma2_r / (snr_x * sin_x * sin_x);
                double mvy = cfg.sigma2_r / (snr_y * sin_y * sin_y);
                VehicleState meas;
                meas.varphi = clamp_angle(
                    truth.varphi + std::sqrt(mvx) * meas_rng.normal());
                meas.phi = clamp_angle(
                    truth.phi + std::sqrt(mvy) * meas_rng.normal());
                meas.d = std::max(min_distance_m,
                                  truth.d + std::sqrt(cfg.a_d_m2 / alloc) *
                                                meas_rng.normal());
                meas.v = truth.v + std::sqrt(cfg.a_v_m2s2 / alloc) * meas_rng.normal();

                belief.q_measure.zeros();
                belief.q_measure(0, 0) = mvx;
                belief.q_measure(1, 1) = mvy;
                belief.q_measure(2, 2) = cfg.a_d_m2 / alloc;
                belief.q_measure(3, 3) = cfg.a_v_m2s2 / alloc;
                belief = kalman_update(belief, meas);

                tr_x = plan_ctx.var_x * mvx / (plan_ctx.var_x + mvx);
                tr_y = plan_ctx.var_y * mvy / (plan_ctx.var_y + mvy);
                took_measurement = true;
            }
        }

        if (!took_measurement)
        {
            // The prediction MSE already sits in belief.mse, so coasting is
            // just forwarding the predicted point state.
            belief.tracked = belief.predicted;
        }

        // Rates are what the link actually delivered: path loss at the true
        // range, sensing sub-slot steered at the prediction, remainder
        // steered at whatever the tracker now believes.
        const BeamPointing aim_tracked{belief.tracked.varphi, belief.tracked.phi};
        SlotContext sc_ctx = make_slot_context(cfg, truth.d, aim_pred, eta,
                                               beta_r, prior_x, prior_y);
        SlotContext c_ctx = make_slot_context(cfg, truth.d, aim_tracked, eta,
                                              beta_r, tr_x, tr_y);
        RateBreakdown br = slot_rate_breakdown(sc_ctx, c_ctx, tr_x, tr_y);

        SlotOutcome slot;
        slot.slot = n;
        slot.x_m = x_m;
        slot.eta = eta;
        slot.beta_r = beta_r;
        slot.rate_sc = br.rate_sc;
        slot.rate_c = br.rate_c;
        slot.rate_avg = br.rate_avg;
        slot.snr_echo = (scheme == Scheme::refraction) ? echo_realized : br.snr_echo;
        slot.sigma2_tracked_phi = tr_y;
        slot.d_tracked_m = belief.tracked.d;
        out.slots.push_back(slot);
        rate_sum += br.rate_avg;
    }

    out.mean_rate = rate_sum / static_cast<double>(cfg.n_slots);
    return out;
}

std::vector<PowerSweepRow> sweep_power(const SystemConfig &cfg,
                                       const std::vector<double> &p_values,
                                       const std::vector<Scheme> &schemes,
                                       std::uint64_t seed)
{
    if (p_values.empty() || schemes.empty())
        throw std::invalid_argument("sweep_power: empty power or scheme list");
    for (size_t i = 0; i < p_values.size(); ++i)
    {
        if (!(p_values[i] > 0.0))
            throw std::invalid_argument("sweep_power: powers must be positive");
        if (i > 0 && !(p_values[i] > p_values[i - 1]))
            throw std::invalid_argument("sweep_power: powers must be strictly ascending");
    }

    const size_t tasks = p_values.size() * schemes.size();
    std::vector<PowerSweepRow> rows(tasks);
    auto run_task = [&](size_t t) {
        const size_t p_idx = t / schemes.size();
        const size_t s_idx = t % schemes.size();
        SystemConfig c = cfg;
        c.p_max_w = p_values[p_idx];
        TrajectoryResult res = run_trajectory(c, schemes[s_idx], seed);
        rows[t] = PowerSweepRow{p_values[p_idx], schemes[s_idx], res.mean_rate};
    };

    const size_t workers = std::min<size_t>(worker_limit(), tasks);
    if (workers <= 1)
    {
        for (size_t t = 0; t < tasks; ++t)
            run_task(t);
        return rows;
    }

    // Static stride partition: row t is always computed by worker t mod W
    // and written into its own slot, so the output is independent of the
    // worker count and of scheduling.
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w]() {
            try
            {
                for (size_t t = w; t < tasks; t += workers)
                    run_task(t);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &th : pool)
        th.join();
    for (const auto &err : errors)
        if (err)
            std::rethrow_exception(err);
    return rows;
}

std::vector<SnrConvergenceRow> validate_snr_convergence(
    const SystemConfig &cfg, const std::vector<arma::uword> &lx_values,
    arma::uword trials, std::uint64_t seed)
{
    if (lx_values.empty())
        throw std::invalid_argument("validate_snr_convergence: no panel sizes");
    if (trials < 10000)
        throw std::invalid_argument("validate_snr_convergence: needs at least 10^4 trials");

    Geometry geom;
    geom.rsu_pos = cfg.rsu_pos;
    geom.veh_pos = cfg.veh_pos0;
    geom.psi_u_x_rad = cfg.psi_u_x_rad;
    geom.psi_u_z_rad = cfg.psi_u_z_rad;
    const PathAngles pa = angles_from_geometry(geom);

    // Broadside pointing with the per-slot process spread as the angle
    // error. The expectation factors per axis, so each axis gets its own
    // stratified quantile grid under a shared random shift; twenty
    // interleaved batches give the spread of the product-of-means.
    const BeamPointing aim{0.5 * pi, 0.5 * pi};
    const double cos_x = std::cos(aim.varphi_point);
    const double cos_y = std::cos(aim.phi_point);
    const double sig_x = std::sqrt(cfg.sigma2_omega_varphi);
    const double sig_y = std::sqrt(cfg.sigma2_omega_phi);
    const arma::uword n_batches = std::min<arma::uword>(20, trials);

    std::vector<SnrConvergenceRow> rows;
    rows.reserve(lx_values.size());
    for (arma::uword lx : lx_values)
    {
        if (lx == 0)
            throw std::invalid_argument("validate_snr_convergence: lx must be positive");
        SystemConfig c = cfg;
        c.l_x = lx;
        SlotContext ctx = make_slot_context(c, pa.distance, aim, 1.0, 1.0,
                                            cfg.sigma2_omega_varphi,
                                            cfg.sigma2_omega_phi);
        const double closed = echo_snr_expected(ctx);

        StreamRng shift_rng(seed, 0x51A0 + static_cast<std::uint64_t>(lx));
        const double u0x = shift_rng.uniform();
        const double u0y = shift_rng.uniform();

        arma::vec sum_x(n_batches, arma::fill::zeros);
        arma::vec sum_y(n_batches, arma::fill::zeros);
        arma::vec cnt(n_batches, arma::fill::zeros);
        double total_x = 0.0;
        double total_y = 0.0;
        for (arma::uword i = 0; i < trials; ++i)
        {
            const double ux = (static_cast<double>(i) + u0x) / static_cast<double>(trials);
            const double uy = (static_cast<double>(i) + u0y) / static_cast<double>(trials);
            const double dx = std::cos(aim.varphi_point + sig_x * normal_quantile(ux)) - cos_x;
            const double dy = std::cos(aim.phi_point + sig_y * normal_quantile(uy)) - cos_y;
            const double fx = fejer_kernel(2.0 * dx, lx) * fejer_kernel(dx, cfg.m_t) *
                              fejer_kernel(dx, cfg.m_r);
            const double fy = fejer_kernel(2.0 * dy, cfg.l_y);
            const arma::uword b = i % n_batches;
            sum_x(b) += fx;
            sum_y(b) += fy;
            cnt(b) += 1.0;
            total_x += fx;
            total_y += fy;
        }

        const double l_total = static_cast<double>(lx) * static_cast<double>(cfg.l_y);
        const double bg = cfg.beta_g(pa.distance);
        const double scale = cfg.slot_len_s * cfg.p_max_w * bg * bg * l_total /
                             (cfg.symbol_len_s * cfg.sigma2_s_w);
        const double mean_x = total_x / static_cast<double>(trials);
        const double mean_y = total_y / static_cast<double>(trials);
        const double snr_mc = scale * mean_x * mean_y;

        double p_mean = 0.0;
        double p_m2 = 0.0;
        for (arma::uword b = 0; b < n_batches; ++b)
        {
            const double p = (sum_x(b) / cnt(b)) * (sum_y(b) / cnt(b));
            const double delta = p - p_mean;
            p_mean += delta / static_cast<double>(b + 1);
            p_m2 += delta * (p - p_mean);
        }
        const double std_err =
            n_batches > 1
                ? scale * std::sqrt(p_m2 / static_cast<double>(n_batches - 1) /
                                    static_cast<double>(n_batches))
                : 0.0;

        SnrConvergenceRow row;
        row.lx = lx;
        row.snr_mc = snr_mc;
        row.snr_closed = closed;
        row.rel_err = std::abs(snr_mc - closed) / closed;
        row.std_err = std_err;
        rows.push_back(row);
    }
    return rows;
}

unsigned worker_limit()
{
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    const char *env = std::getenv("ISAC_SIM_THREADS");
    if (env == nullptr || *env == '\0')
        return hw;
    char *end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        return 1; // a cap we cannot parse reads as "stay serial"
    return static_cast<unsigned>(std::min<unsigned long>(v, hw));
}

} // namespace iosim
