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

#include "iosim/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "iosim/tracking.hpp"

namespace iosim
{

namespace
{

constexpr double ln2 = 0.69314718055994530941723212145818;

} // namespace

std::vector<double> allocation_grid(double step)
{
    if (!(step > 0.0) || step > 0.5)
        throw std::invalid_argument("grid step must lie in (0, 0.5]");
    std::vector<double> grid;
    long count = std::lround(std::ceil(1.0 / step - 1e-9));
    grid.reserve(static_cast<size_t>(count) + 1);
    for (long i = 0; i < count; ++i)
        grid.push_back(std::min(1.0, static_cast<double>(i) * step));
    grid.push_back(1.0);
    return grid;
}

double allocation_objective(const SlotContext &base, RateObjective objective,
                            double eta, double beta_r)
{
    SlotContext ctx = base;
    ctx.eta = eta;
    ctx.beta_r = beta_r;
    if (objective == RateObjective::separable)
        return rate_allocation_model(ctx);

    double tr_x = tracked_angle_variance(ctx.var_x, ctx.a_var_x, eta, beta_r);
    double tr_y = tracked_angle_variance(ctx.var_y, ctx.a_var_y, eta, beta_r);
    return eta * rate_sensing_phase(ctx) + (1.0 - eta) * rate_comm_phase(ctx, tr_x, tr_y);
}

SlotDecision optimize_slot(const SlotContext &base, const SearchSpec &spec)
{
    if (base.a_var_x <= 0.0 || base.a_var_y <= 0.0)
        throw std::invalid_argument("optimize_slot: measurement scales unset");
    std::vector<double> etas = allocation_grid(spec.eta_step);
    std::vector<double> betas = allocation_grid(spec.beta_step);

    // The sensing-phase rate depends on beta_r only; hoist it out of the
    // eta loop. The closed-form objective then costs one series product per
    // cell for the communication term.
    std::vector<double> sc_by_beta;
    SlotContext ctx = base;
    if (spec.objective == RateObjective::closed_form)
    {
        sc_by_beta.reserve(betas.size());
        for (double b : betas)
        {
            ctx.eta = 0.0;
            ctx.beta_r = b;
            sc_by_beta.push_back(rate_sensing_phase(ctx));
        }
    }

    SlotDecision best;
    bool seeded = false;
    double best_rate = 0.0;
    for (double eta : etas)
    {
        for (size_t bi = 0; bi < betas.size(); ++bi)
        {
            double beta = betas[bi];
            double r;
            if (spec.objective == RateObjective::closed_form)
            {
                ctx.eta = eta;
                ctx.beta_r = beta;
                double tr_x = tracked_angle_variance(ctx.var_x, ctx.a_var_x, eta, beta);
                double tr_y = tracked_angle_variance(ctx.var_y, ctx.a_var_y, eta, beta);
                r = eta * sc_by_beta[bi] + (1.0 - eta) * rate_comm_phase(ctx, tr_x, tr_y);
            }
            else
            {
                r = allocation_objective(base, spec.objective, eta, beta);
            }

            // Require a real improvement before moving off the incumbent;
            // sub-epsilon wiggle on flat regions must not drag the argmax
            // away from the smallest (eta, beta_r).
            if (!seeded || r > best_rate + 1e-9 * (1.0 + std::abs(best_rate)))
            {
                seeded = true;
                best_rate = r;
                best.eta_star = eta;
                best.beta_r_star = beta;
            }
        }
    }

    best.rate_star = best_rate;
    best.condition_value = base.var_x / base.a_var_x + base.var_y / base.a_var_y;
    return best;
}

SensingCondition sensing_phase_needed(double var_x, double var_y, double a_x,
                                      double a_y)
{
    if (a_x <= 0.0 || a_y <= 0.0)
        throw std::invalid_argument("sensing_phase_needed: scales must be positive");
    if (var_x < 0.0 || var_y < 0.0)
        throw std::invalid_argument("sensing_phase_needed: variances must be "
                                    "nonnegative");
    SensingCondition out;
    out.condition_value = var_x / a_x + var_y / a_y;
    out.needed = out.condition_value > 2.0;
    return out;
}

double sensing_time_gradient(const SlotContext &ctx, double beta_r)
{
    if (ctx.a_var_x <= 0.0 || ctx.a_var_y <= 0.0)
        throw std::invalid_argument("sensing_time_gradient: measurement scales unset");
    double c1 = allocation_model_c1(ctx);
    double ratio_sum = ctx.var_x / ctx.a_var_x + ctx.var_y / ctx.a_var_y;
    double log_term = std::log2(1.0 + c1 * (1.0 - beta_r)) - std::log2(1.0 + c1);
    return log_term + c1 * ratio_sum * beta_r / (2.0 * (1.0 + c1) * ln2);
}

GradientDiagnostics gradient_diagnostics(const SlotContext &ctx)
{
    GradientDiagnostics out;
    const arma::uword n = 101;
    out.beta_grid.set_size(n);
    out.g_values.set_size(n);
    for (arma::uword i = 0; i < n; ++i)
    {
        double b = std::min(1.0, static_cast<double>(i) * 0.01);
        out.beta_grid(i) = b;
        out.g_values(i) = sensing_time_gradient(ctx, b);
    }
    double c1 = allocation_model_c1(ctx);
    double ratio_sum = ctx.var_x / ctx.a_var_x + ctx.var_y / ctx.a_var_y;
    out.g_prime_at_0 = c1 * (0.5 * ratio_sum - 1.0) / ((1.0 + c1) * ln2);
    return out;
}

} // namespace iosim
