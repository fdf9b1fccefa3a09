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

#include "iosim/config_parse.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace iosim
{

namespace
{

std::string trim(const std::string &s)
{
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string &val, const std::string &where)
{
    try
    {
        size_t pos = 0;
        double x = std::stod(val, &pos);
        if (pos != val.size())
            throw std::invalid_argument("trailing characters");
        return x;
    }
    catch (const std::exception &)
    {
        throw ConfigError(where + ": not a number: '" + val + "'");
    }
}

arma::uword parse_count(const std::string &val, const std::string &where)
{
    double x = parse_number(val, where);
    if (x < 0.0 || x != std::floor(x) || x > 1e12)
        throw ConfigError(where + ": expected a nonnegative integer, got '" + val + "'");
    return static_cast<arma::uword>(x);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

using Setter = std::function<void(SystemConfig &, const std::string &, const std::string &)>;

const std::map<std::string, Setter> &key_table()
{
    auto num = [](double SystemConfig::*field) {
        return [field](SystemConfig &c, const std::string &v, const std::string &w) {
            c.*field = parse_number(v, w);
        };
    };
    auto cnt = [](arma::uword SystemConfig::*field) {
        return [field](SystemConfig &c, const std::string &v, const std::string &w) {
            c.*field = parse_count(v, w);
        };
    };
    auto db = [](double SystemConfig::*field) {
        return [field](SystemConfig &c, const std::string &v, const std::string &w) {
            c.*field = db_to_linear(parse_number(v, w));
        };
    };
    auto dbm = [](double SystemConfig::*field) {
        return [field](SystemConfig &c, const std::string &v, const std::string &w) {
            c.*field = dbm_to_watt(parse_number(v, w));
        };
    };
    auto vec3 = [](arma::vec3 SystemConfig::*field, int idx) {
        return [field, idx](SystemConfig &c, const std::string &v, const std::string &w) {
            (c.*field)(idx) = parse_number(v, w);
        };
    };

    static const std::map<std::string, Setter> table = {
        {"t_total_s", num(&SystemConfig::t_total_s)},
        {"n_slots", cnt(&SystemConfig::n_slots)},
        {"slot_len_s", num(&SystemConfig::slot_len_s)},
        {"symbol_len_s", num(&SystemConfig::symbol_len_s)},
        {"m_t", cnt(&SystemConfig::m_t)},
        {"m_r", cnt(&SystemConfig::m_r)},
        {"l_x", cnt(&SystemConfig::l_x)},
        {"l_y", cnt(&SystemConfig::l_y)},
        {"p_max_w", num(&SystemConfig::p_max_w)},
        {"beta0_db", db(&SystemConfig::beta0)},
        {"sigma2_s_dbm", dbm(&SystemConfig::sigma2_s_w)},
        {"sigma2_c_dbm", dbm(&SystemConfig::sigma2_c_w)},
        {"sigma2_r", num(&SystemConfig::sigma2_r)},
        {"f_c_hz", num(&SystemConfig::f_c_hz)},
        {"sigma2_omega_varphi", num(&SystemConfig::sigma2_omega_varphi)},
        {"sigma2_omega_phi", num(&SystemConfig::sigma2_omega_phi)},
        {"sigma2_omega_d", num(&SystemConfig::sigma2_omega_d)},
        {"sigma2_omega_v", num(&SystemConfig::sigma2_omega_v)},
        {"a_d_m2", num(&SystemConfig::a_d_m2)},
        {"a_v_m2s2", num(&SystemConfig::a_v_m2s2)},
        {"beta_h_db", db(&SystemConfig::beta_h)},
        {"psi_u_x_rad", num(&SystemConfig::psi_u_x_rad)},
        {"psi_u_z_rad", num(&SystemConfig::psi_u_z_rad)},
        {"rsu_x_m", vec3(&SystemConfig::rsu_pos, 0)},
        {"rsu_y_m", vec3(&SystemConfig::rsu_pos, 1)},
        {"rsu_z_m", vec3(&SystemConfig::rsu_pos, 2)},
        {"veh_x0_m", vec3(&SystemConfig::veh_pos0, 0)},
        {"veh_y0_m", vec3(&SystemConfig::veh_pos0, 1)},
        {"veh_z0_m", vec3(&SystemConfig::veh_pos0, 2)},
        {"speed_mps", num(&SystemConfig::speed_mps)},
        {"seed",
         [](SystemConfig &c, const std::string &v, const std::string &w) {
             c.seed = static_cast<std::uint64_t>(parse_count(v, w));
         }},
    };
    return table;
}

} // namespace

void validate_config(const SystemConfig &cfg)
{
    if (cfg.n_slots == 0)
        throw ConfigError("n_slots must be positive");
    double t = static_cast<double>(cfg.n_slots) * cfg.slot_len_s;
    if (std::abs(t - cfg.t_total_s) > 1e-9 * std::max(1.0, cfg.t_total_s))
        throw ConfigError("timing mismatch: n_slots * slot_len_s != t_total_s");
    if (!(cfg.slot_len_s > 0.0) || !(cfg.symbol_len_s > 0.0))
        throw ConfigError("slot_len_s and symbol_len_s must be positive");
    if (cfg.symbol_len_s > cfg.slot_len_s)
        throw ConfigError("symbol_len_s cannot exceed slot_len_s");
    if (cfg.m_t == 0 || cfg.m_r == 0 || cfg.l_x == 0 || cfg.l_y == 0)
        throw ConfigError("array sizes must be positive");
    if (!(cfg.p_max_w > 0.0) || !(cfg.beta0 > 0.0) || !(cfg.beta_h > 0.0))
        throw ConfigError("powers and channel gains must be positive");
    if (!(cfg.sigma2_s_w > 0.0) || !(cfg.sigma2_c_w > 0.0) || !(cfg.sigma2_r > 0.0))
        throw ConfigError("noise powers must be positive");
    if (cfg.sigma2_omega_varphi < 0.0 || cfg.sigma2_omega_phi < 0.0 ||
        cfg.sigma2_omega_d < 0.0 || cfg.sigma2_omega_v < 0.0)
        throw ConfigError("process variances must be nonnegative");
    if (!(cfg.a_d_m2 > 0.0) || !(cfg.a_v_m2s2 > 0.0))
        throw ConfigError("a_d_m2 and a_v_m2s2 must be positive");
    if (cfg.speed_mps < 0.0)
        throw ConfigError("speed_mps must be nonnegative");
}

SystemConfig parse_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);

    SystemConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string where = path + ":" + std::to_string(lineno);
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(where + ": expected 'key = value'");

        auto it = key_table().find(key);
        if (it == key_table().end())
            throw ConfigError(where + ": unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw ConfigError(where + ": duplicate key '" + key + "'");
        it->second(cfg, val, where);
    }

    validate_config(cfg);
    return cfg;
}

void apply_override(SystemConfig &cfg, const std::string &kv)
{
    size_t eq = kv.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got '" + kv + "'");
    std::string key = trim(kv.substr(0, eq));
    std::string val = trim(kv.substr(eq + 1));
    auto it = key_table().find(key);
    if (it == key_table().end())
        throw ConfigError("--set: unknown key '" + key + "'");
    it->second(cfg, val, "--set " + key);
}

} // namespace iosim
