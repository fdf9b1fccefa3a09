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

#ifndef IOSIM_OPTIMIZER_HPP
#define IOSIM_OPTIMIZER_HPP

#include <functional>
#include <vector>

#include "iosim/rates.hpp"

namespace iosim
{

// Which slot-rate surrogate the (eta, beta_r) search maximizes. closed_form
// combines the two per-phase rates with the posterior variance coupling;
// separable uses the explicit allocation model, cheaper and analytic.
enum class RateObjective
{
    closed_form,
    separable,
};

struct SearchSpec
{
    double eta_step = 0.01;
    double beta_step = 0.01;
    RateObjective objective = RateObjective::closed_form;
};

struct SlotDecision
{
    double eta_star = 0.0;
    double beta_r_star = 0.0;
    double rate_star = 0.0;
    // Prior-to-measurement variance ratio sum; sensing pays off when > 2.
    double condition_value = 0.0;
};

// The search grid {0, step, ..., 1} with 1 always included; step must lie in
// (0, 0.5]. At the default step 0.01 this has 101 points.
std::vector<double> allocation_grid(double step);

// Slot rate under the chosen surrogate at one (eta, beta_r) cell. The eta
// and beta_r stored in `base` are ignored.
double allocation_objective(const SlotContext &base, RateObjective objective,
                            double eta, double beta_r);

/*!
 * Exhaustive search over the (eta, beta_r) grid {0, step, ..., 1}^2. A cell
 * only displaces the incumbent when it wins by more than a relative epsilon,
 * so on plateaus (and up to roundoff on exact ties) the result is the
 * lexicographically smallest (eta, beta_r). In particular a constant
 * objective yields (0, 0).
 */
SlotDecision optimize_slot(const SlotContext &base, const SearchSpec &spec);

struct SensingCondition
{
    bool needed = false;
    double condition_value = 0.0;
};

/*!
 * Whether any positive sensing allocation beats none: true exactly when
 * var_x / a_x + var_y / a_y > 2 (strictly; the boundary case gains nothing).
 * The ratios compare the prior angle uncertainty against the measurement
 * noise at full allocation.
 */
SensingCondition sensing_phase_needed(double var_x, double var_y, double a_x,
                                      double a_y);

/*!
 * Marginal value of sensing time at eta = 0 under the separable model, as a
 * function of beta_r:
 *
 *   g(b) = log2(1 + c1 (1 - b)) - log2(1 + c1)
 *          + c1 (var_x/a_x + var_y/a_y) b / (2 (1 + c1) ln 2)
 *
 * g(0) == 0 identically (same-argument logs cancel bit-for-bit) and the sign
 * of g'(0) matches sensing_phase_needed.
 */
double sensing_time_gradient(const SlotContext &ctx, double beta_r);

struct GradientDiagnostics
{
    arma::vec beta_grid;
    arma::vec g_values;
    double g_prime_at_0 = 0.0; // analytic, bits per unit beta_r
};

// Sample g over beta_r in {0, 0.01, ..., 1} and report the analytic g'(0).
GradientDiagnostics gradient_diagnostics(const SlotContext &ctx);

} // namespace iosim

#endif
