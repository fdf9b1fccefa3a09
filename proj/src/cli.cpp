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

#include "iosim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "iosim/channel.hpp"
#include "iosim/config_parse.hpp"
#include "iosim/csv.hpp"
#include "iosim/optimizer.hpp"
#include "iosim/rates.hpp"
#include "iosim/sim.hpp"

namespace iosim
{

namespace
{

// Per-slot planning context at the start-of-drive vehicle position: beams on
// the true angles, prior spread equal to one slot of process noise. This is
// the operating point the optimize-slot and condition-map tables describe.
SlotContext initial_slot_context(const SystemConfig &cfg)
{
    Geometry geom;
    geom.rsu_pos = cfg.rsu_pos;
    geom.veh_pos = cfg.veh_pos0;
    geom.psi_u_x_rad = cfg.psi_u_x_rad;
    geom.psi_u_z_rad = cfg.psi_u_z_rad;
    PathAngles pa = angles_from_geometry(geom);
    BeamPointing aim{pa.varphi, pa.phi};
    return make_slot_context(cfg, pa.distance, aim, 0.0, 0.0,
                             cfg.sigma2_omega_varphi, cfg.sigma2_omega_phi);
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

CsvTable table_validate_snr(const SystemConfig &cfg, arma::uword trials,
                            std::uint64_t seed)
{
    const std::vector<arma::uword> lx_values{10, 20, 40, 80};
    auto rows = validate_snr_convergence(cfg, lx_values, trials, seed);

    CsvTable t;
    t.header = {"lx", "snr_mc", "snr_closed", "rel_err", "stderr"};
    for (const auto &r : rows)
        t.rows.push_back({format_value(static_cast<double>(r.lx)),
                          format_value(r.snr_mc), format_value(r.snr_closed),
                          format_value(r.rel_err), format_value(r.std_err)});
    return t;
}

CsvTable table_optimize_slot(const SystemConfig &cfg, double grid_step)
{
    SlotContext ctx = initial_slot_context(cfg);
    std::vector<double> grid = allocation_grid(grid_step);

    CsvTable t;
    t.header = {"eta", "beta_r", "rate"};
    for (double eta : grid)
        for (double beta : grid)
        {
            double r = allocation_objective(ctx, RateObjective::closed_form,
                                            eta, beta);
            t.rows.push_back({format_value(eta), format_value(beta),
                              format_value(r)});
        }
    return t;
}

CsvTable table_simulate(const SystemConfig &cfg, std::uint64_t seed)
{
    CsvTable t;
    t.header = {"slot", "x_m", "scheme", "eta", "beta_r", "rate_sc",
                "rate_c", "rate_avg", "snr_echo_db", "sigma2_tracked_phi"};
    for (Scheme scheme : {Scheme::proposed, Scheme::refraction, Scheme::prediction})
    {
        TrajectoryResult res = run_trajectory(cfg, scheme, seed);
        for (const auto &s : res.slots)
            t.rows.push_back({format_value(static_cast<double>(s.slot)),
                              format_value(s.x_m), scheme_name(scheme),
                              format_value(s.eta), format_value(s.beta_r),
                              format_value(s.rate_sc), format_value(s.rate_c),
                              format_value(s.rate_avg),
                              format_value(to_db(s.snr_echo)),
                              format_value(s.sigma2_tracked_phi)});
    }
    return t;
}

CsvTable table_sweep_power(const SystemConfig &cfg, std::uint64_t seed)
{
    const std::vector<double> p_values{0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
    const std::vector<Scheme> schemes{Scheme::proposed, Scheme::refraction,
                                      Scheme::prediction};
    auto rows = sweep_power(cfg, p_values, schemes, seed);

    CsvTable t;
    t.header = {"p_max_w", "scheme", "mean_rate"};
    for (const auto &r : rows)
        t.rows.push_back({format_value(r.p_max_w), scheme_name(r.scheme),
                          format_value(r.mean_rate)});
    return t;
}

CsvTable table_condition_map(const SystemConfig &cfg, double grid_step)
{
    SlotContext base = initial_slot_context(cfg);
    SearchSpec spec;
    spec.eta_step = grid_step;
    spec.beta_step = grid_step;
    spec.objective = RateObjective::separable;

    // 20 ratio points per axis over [0.1, 4]; each cell rescales the
    // measurement variance so prior/measurement hits the requested ratio
    // while the prior itself (and with it the link constant) stays fixed.
    const int n_ratio = 20;
    CsvTable t;
    t.header = {"ratio_x", "ratio_y", "condition_lhs", "needed_pred", "eta_star"};
    for (int i = 0; i < n_ratio; ++i)
    {
        double rx = 0.1 + (4.0 - 0.1) * i / (n_ratio - 1);
        for (int j = 0; j < n_ratio; ++j)
        {
            double ry = 0.1 + (4.0 - 0.1) * j / (n_ratio - 1);
            SlotContext ctx = base;
            ctx.a_var_x = ctx.var_x / rx;
            ctx.a_var_y = ctx.var_y / ry;
            SlotDecision dec = optimize_slot(ctx, spec);
            SensingCondition cond = sensing_phase_needed(ctx.var_x, ctx.var_y,
                                                         ctx.a_var_x, ctx.a_var_y);
            t.rows.push_back({format_value(rx), format_value(ry),
                              format_value(cond.condition_value),
                              format_value(cond.needed ? 1.0 : 0.0),
                              format_value(dec.eta_star)});
        }
    }
    return t;
}

} // namespace

int run(const RunManifest &manifest)
{
    SystemConfig cfg;
    std::uint64_t seed = 0;
    try
    {
        if (!manifest.config_path.empty())
            cfg = parse_config(manifest.config_path);
        for (const auto &kv : manifest.overrides)
            apply_override(cfg, kv);
        validate_config(cfg);
        seed = manifest.seed_set ? manifest.seed : cfg.seed;

        if (!(manifest.grid_step > 0.0) || manifest.grid_step > 0.5)
        {
            std::fprintf(stderr, "iosim: --grid-step must lie in (0, 0.5]\n");
            return exit_config_error;
        }
        if (manifest.subcommand == "validate-snr" && manifest.trials < 10000)
        {
            std::fprintf(stderr, "iosim: validate-snr needs --trials >= 10000\n");
            return exit_config_error;
        }
    }
    catch (const ConfigError &e)
    {
        std::fprintf(stderr, "iosim: %s\n", e.what());
        return exit_config_error;
    }

    try
    {
        CsvTable table;
        if (manifest.subcommand == "validate-snr")
            table = table_validate_snr(cfg, manifest.trials, seed);
        else if (manifest.subcommand == "optimize-slot")
            table = table_optimize_slot(cfg, manifest.grid_step);
        else if (manifest.subcommand == "simulate")
            table = table_simulate(cfg, seed);
        else if (manifest.subcommand == "sweep-power")
            table = table_sweep_power(cfg, seed);
        else if (manifest.subcommand == "condition-map")
            table = table_condition_map(cfg, manifest.grid_step);
        else
        {
            std::fprintf(stderr,
                         "iosim: unknown subcommand '%s'\n"
                         "usage: iosim {validate-snr|optimize-slot|simulate|"
                         "sweep-power|condition-map} [--config <path>] "
                         "[--seed <u64>] [--out <path>] [--trials <n>] "
                         "[--set key=value]... [--grid-step <f>]\n",
                         manifest.subcommand.c_str());
            return exit_config_error;
        }

        const std::string out = manifest.out_path.empty()
                                    ? manifest.subcommand + ".csv"
                                    : manifest.out_path;
        write_csv_atomic(out, table);
        std::fprintf(stdout, "%s: wrote %zu rows to %s\n",
                     manifest.subcommand.c_str(), table.rows.size(), out.c_str());
        return exit_ok;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "iosim: %s failed: %s\n",
                     manifest.subcommand.c_str(), e.what());
        return exit_numeric_error;
    }
}

} // namespace iosim
