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

#ifndef IOSIM_SIM_HPP
#define IOSIM_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "iosim/system_config.hpp"

namespace iosim
{

/*!
 * The three link-control strategies compared on a drive-by:
 *  - proposed:   optimize (eta, beta_r) per slot, sense and track;
 *  - refraction: same allocation, but the reflect face phases are drawn at
 *                random, so the echo is incoherent and tracking degrades;
 *  - prediction: never sense (eta = 0); beams follow the dead-reckoned
 *                state and uncertainty compounds.
 */
enum class Scheme
{
    proposed,
    refraction,
    prediction,
};

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string &name);

struct SlotOutcome
{
    arma::uword slot = 0;            // 0-based
    double x_m = 0.0;                // true vehicle x this slot
    double eta = 0.0;                // chosen sensing fraction
    double beta_r = 0.0;             // chosen reflect split
    double rate_sc = 0.0;            // bits/s/Hz while sensing
    double rate_c = 0.0;             // bits/s/Hz refract-only
    double rate_avg = 0.0;           // eta-weighted slot rate
    double snr_echo = 0.0;           // linear; realized for refraction
    double sigma2_tracked_phi = 0.0; // post-measurement phi variance, rad^2
    double d_tracked_m = 0.0;        // tracker's range after the slot
};

struct TrajectoryResult
{
    Scheme scheme = Scheme::proposed;
    std::vector<SlotOutcome> slots;
    double mean_rate = 0.0;
};

/*!
 * Simulate one drive-by of n_slots slots. Ground truth comes from exact
 * geometry (straight road, constant speed); the filter sees it only through
 * its kinematic model and the noisy echoes, so the model mismatch is part of
 * what is being measured. Deterministic for fixed (cfg, scheme, seed).
 */
TrajectoryResult run_trajectory(const SystemConfig &cfg, Scheme scheme,
                                std::uint64_t seed);

struct PowerSweepRow
{
    double p_max_w = 0.0;
    Scheme scheme = Scheme::proposed;
    double mean_rate = 0.0;
};

// Re-run the trajectory across transmit power levels for each scheme.
// Rows come back ordered by (p_value index, scheme index) regardless of how
// many workers ran them.
std::vector<PowerSweepRow> sweep_power(const SystemConfig &cfg,
                                       const std::vector<double> &p_values,
                                       const std::vector<Scheme> &schemes,
                                       std::uint64_t seed);

struct SnrConvergenceRow
{
    arma::uword lx = 0;
    double snr_mc = 0.0;
    double snr_closed = 0.0;
    double rel_err = 0.0;
    double std_err = 0.0;
};

/*!
 * Compare the sampled and expected echo SNR while the panel row count grows,
 * at full sensing allocation and broadside pointing. The sampled column uses
 * a stratified low-discrepancy estimator of the two kernel expectations (one
 * per axis) so the residual against the expected column is the systematic
 * finite-panel gap, not sampling noise; std_err is estimated from twenty
 * interleaved sample batches and shrinks faster than 1/sqrt(trials).
 */
std::vector<SnrConvergenceRow> validate_snr_convergence(
    const SystemConfig &cfg, const std::vector<arma::uword> &lx_values,
    arma::uword trials, std::uint64_t seed);

// Worker cap for the embarrassingly parallel drivers: the minimum of the
// hardware thread count and the ISAC_SIM_THREADS environment variable.
unsigned worker_limit();

} // namespace iosim

#endif
