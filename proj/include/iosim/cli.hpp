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

#ifndef IOSIM_CLI_HPP
#define IOSIM_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <armadillo>

namespace iosim
{

/*!
 * One resolved invocation of the driver. The flag parser fills this in;
 * run() does everything else, so tests can exercise the whole pipeline
 * without spawning a process.
 */
struct RunManifest
{
    std::string subcommand;
    std::string config_path;            // empty: built-in defaults
    std::string out_path;               // empty: "<subcommand>.csv"
    std::vector<std::string> overrides; // key=value, applied in order
    std::uint64_t seed = 0;
    bool seed_set = false;              // false: the config's seed applies
    arma::uword trials = 100000;
    double grid_step = 0.01;
};

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_numeric_error = 3;

/*!
 * Execute one subcommand and write its CSV atomically:
 *   validate-snr   sampled vs expected echo SNR while the panel grows
 *   optimize-slot  slot rate over the full (eta, beta_r) grid
 *   simulate       per-slot traces of all three schemes
 *   sweep-power    mean rate per scheme across transmit power levels
 *   condition-map  sensing-worthwhile predicate vs the searched optimum
 * Returns exit_ok, exit_config_error (bad flags, bad config file, unknown
 * key or subcommand), or exit_numeric_error (the run itself failed).
 * Diagnostics go to stderr; a one-line completion note goes to stdout.
 */
int run(const RunManifest &manifest);

} // namespace iosim

#endif
