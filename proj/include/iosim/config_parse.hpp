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

#ifndef IOSIM_CONFIG_PARSE_HPP
#define IOSIM_CONFIG_PARSE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "iosim/system_config.hpp"

namespace iosim
{

// Config handling errors carry the offending file/line so the CLI can print
// something actionable and exit with the config-error status.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

/*!
 * Parse a flat "key = value" config file. '#' starts a comment, blank lines
 * are skipped. Keys are checked against the known set; unknown keys,
 * duplicates, malformed numbers and inconsistent timing
 * (n_slots * slot_len_s != t_total_s) all raise ConfigError with the line
 * number. dB-valued keys (beta0_db, beta_h_db) and dBm-valued keys
 * (sigma2_s_dbm, sigma2_c_dbm) are converted to linear on the spot.
 */
SystemConfig parse_config(const std::string &path);

// Apply one "key=value" override on top of a parsed config (CLI --set).
void apply_override(SystemConfig &cfg, const std::string &key_equals_value);

// Re-run the cross-field consistency checks (used after overrides).
void validate_config(const SystemConfig &cfg);

} // namespace iosim

#endif
