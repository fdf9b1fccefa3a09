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

#include <string>

#include "CLI11.hpp"

#include "iosim/cli.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"iosim: sensing-assisted link simulation driver"};
    app.require_subcommand(1);

    iosim::RunManifest manifest;
    app.add_option("--config", manifest.config_path,
                   "flat key = value config file (defaults apply when omitted)");
    auto *seed_opt = app.add_option("--seed", manifest.seed,
                                    "RNG seed (defaults to the config's seed)");
    app.add_option("--out", manifest.out_path,
                   "output CSV path (defaults to <subcommand>.csv)");
    app.add_option("--trials", manifest.trials, "Monte Carlo trials");
    app.add_option("--set", manifest.overrides,
                   "config override key=value, repeatable");
    app.add_option("--grid-step", manifest.grid_step,
                   "allocation search grid step in (0, 0.5]");

    // Subcommands carry no options of their own; flags placed after the
    // subcommand fall through to the ones declared above.
    for (const char *name : {"validate-snr", "optimize-slot", "simulate",
                             "sweep-power", "condition-map"})
        app.add_subcommand(name)->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? iosim::exit_ok : iosim::exit_config_error;
    }

    manifest.seed_set = seed_opt->count() > 0;
    manifest.subcommand = app.get_subcommands().front()->get_name();
    return iosim::run(manifest);
}
