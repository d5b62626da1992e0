// SPDX-License-Identifier: Apache-2.0
//
// satnull: hybrid MIMO precoding with LEO satellite interference nulling
// Copyright (C) 2026 The satnull authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef SATNULL_SCENARIO_HPP
#define SATNULL_SCENARIO_HPP

#include "channel.hpp"
#include "metrics.hpp"
#include "precoder.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace satnull
{

inline constexpr int scenario_schema_version = 1;
inline constexpr double earth_radius_m = 6371e3;

enum class SatelliteMode
{
    random, // angles drawn per trial
    fixed   // geometries taken verbatim from the scenario
};

struct SatelliteConfig
{
    SatelliteMode mode = SatelliteMode::random;
    int count = 2;
    double min_elevation_deg = 30.0;
    double max_elevation_deg = 90.0;
    double altitude_m = 100e3;
    double atmospheric_loss_db = 0.5;
    std::vector<SatelliteGeometry> fixed;

    int n_sat() const { return mode == SatelliteMode::fixed ? static_cast<int>(fixed.size()) : count; }
};

// One complete experiment description. Defaults reproduce the reference
// setup: 8x8 URA, 8 RF chains, 2 UEs with 2-element ULAs, 2 satellites,
// 14 GHz carrier and 200 MHz bandwidth.
struct Scenario
{
    int schema_version = scenario_schema_version;
    ArrayGeometry bs_array = ArrayGeometry::ura(8, 8, 0.5);
    ArrayGeometry ue_array = ArrayGeometry::ula(2, 0.5);
    Index n_rf = 8;
    Index n_ue = 2;
    double carrier_hz = 14e9;
    double bandwidth_hz = 200e6;
    double p_t_watts = 1.0;
    double ue_pathloss_min_db = 120.0;
    double ue_pathloss_max_db = 140.0;
    int paths_per_ue = 4;
    double ue_noise_figure_db = 7.0;
    double sat_noise_figure_db = 2.0;
    SatelliteConfig satellites;
    OptimizerConfig optimizer;
    InrPowerFactor inr_power_factor = InrPowerFactor::literal;
    std::uint64_t rng_seed = 1;
    int trial_count = 500;

    Index n_t() const { return bs_array.size(); }
    Index n_r() const { return ue_array.size(); }
    int n_sat() const { return satellites.n_sat(); }

    // Optimizer settings with the scenario transmit power applied.
    OptimizerConfig optimizer_config() const
    {
        OptimizerConfig c = optimizer;
        c.p_t = p_t_watts;
        return c;
    }

    void validate() const
    {
        if (schema_version != scenario_schema_version)
            throw config_error("scenario: unsupported schema_version " + std::to_string(schema_version));
        bs_array.validate();
        ue_array.validate();
        if (n_rf < 1 || n_rf > n_t())
            throw validation_error("scenario: n_rf must lie in [1, n_t]");
        if (n_ue < 1)
            throw validation_error("scenario: n_ue must be at least 1");
        if (trial_count < 1)
            throw validation_error("scenario: trial_count must be at least 1");
        if (paths_per_ue < 1)
            throw validation_error("scenario: paths_per_ue must be at least 1");
        if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0) || !(p_t_watts > 0.0))
            throw validation_error("scenario: carrier, bandwidth and power must be positive");
        if (!(ue_pathloss_min_db <= ue_pathloss_max_db))
            throw validation_error("scenario: UE pathloss range is empty");
        if (satellites.mode == SatelliteMode::random)
        {
            if (satellites.count < 0)
                throw validation_error("scenario: satellite count must be nonnegative");
            if (!(satellites.min_elevation_deg > 0.0) || satellites.max_elevation_deg > 90.0 ||
                satellites.min_elevation_deg > satellites.max_elevation_deg)
                throw validation_error("scenario: satellite elevation range must lie in (0, 90] degrees");
            if (!(satellites.altitude_m > 0.0) || !(satellites.atmospheric_loss_db >= 0.0))
                throw validation_error("scenario: satellite altitude and atmospheric loss must be valid");
        }
        else
            for (const auto &s : satellites.fixed)
                s.validate();
        optimizer_config().validate();
    }
};

// Distance from a ground station to a satellite at the given altitude seen
// at the given elevation above the horizon (spherical Earth).
inline double slant_range_m(double elevation_rad, double altitude_m)
{
    const double r = earth_radius_m;
    const double c = r * std::cos(elevation_rad);
    return std::sqrt((r + altitude_m) * (r + altitude_m) - c * c) - r * std::sin(elevation_rad);
}

namespace detail
{

inline constexpr double deg = std::numbers::pi / 180.0;

inline nlohmann::json array_to_json(const ArrayGeometry &a)
{
    if (a.kind == ArrayKind::URA)
        return {{"kind", "ura"}, {"rows", a.rows}, {"cols", a.cols}, {"spacing", a.spacing}};
    return {{"kind", "ula"}, {"elements", a.rows}, {"spacing", a.spacing}};
}

inline ArrayGeometry array_from_json(const nlohmann::json &j)
{
    const std::string kind = j.at("kind").get<std::string>();
    const double spacing = j.value("spacing", 0.5);
    if (kind == "ura")
        return ArrayGeometry::ura(j.at("rows").get<Index>(), j.at("cols").get<Index>(), spacing);
    if (kind == "ula")
        return ArrayGeometry::ula(j.at("elements").get<Index>(), spacing);
    throw config_error("scenario: unknown array kind '" + kind + "'");
}

} // namespace detail

inline nlohmann::json to_json(const Scenario &s)
{
    using nlohmann::json;
    json sats = {{"mode", s.satellites.mode == SatelliteMode::random ? "random" : "fixed"},
                 {"count", s.satellites.count},
                 {"elevation_range_deg", {s.satellites.min_elevation_deg, s.satellites.max_elevation_deg}},
                 {"altitude_m", s.satellites.altitude_m},
                 {"atmospheric_loss_db", s.satellites.atmospheric_loss_db}};
    json fixed = json::array();
    for (const auto &g : s.satellites.fixed)
        fixed.push_back({{"azimuth_deg", g.azimuth / detail::deg},
                         {"elevation_deg", g.elevation / detail::deg},
                         {"slant_range_m", g.slant_range},
                         {"atmospheric_loss_db", g.atmospheric_loss}});
    sats["fixed"] = fixed;

    return {{"schema_version", s.schema_version},
            {"bs_array", detail::array_to_json(s.bs_array)},
            {"ue_array", detail::array_to_json(s.ue_array)},
            {"n_rf", s.n_rf},
            {"n_ue", s.n_ue},
            {"carrier_hz", s.carrier_hz},
            {"bandwidth_hz", s.bandwidth_hz},
            {"p_t_watts", s.p_t_watts},
            {"ue_pathloss_range_db", {s.ue_pathloss_min_db, s.ue_pathloss_max_db}},
            {"paths_per_ue", s.paths_per_ue},
            {"ue_noise_figure_db", s.ue_noise_figure_db},
            {"sat_noise_figure_db", s.sat_noise_figure_db},
            {"satellites", sats},
            {"optimizer",
             {{"lambda_sat", s.optimizer.lambda_sat},
              {"step_size", s.optimizer.step_size},
              {"iter_bb", s.optimizer.iter_bb},
              {"iter_rf", s.optimizer.iter_rf},
              {"outer_iters", s.optimizer.outer_iters}}},
            {"inr_power_factor", s.inr_power_factor == InrPowerFactor::literal ? "literal" : "unit"},
            {"rng_seed", s.rng_seed},
            {"trial_count", s.trial_count}};
}

inline InrPowerFactor parse_inr_power_factor(const std::string &v)
{
    if (v == "literal")
        return InrPowerFactor::literal;
    if (v == "unit")
        return InrPowerFactor::unit;
    throw config_error("unknown inr-power-factor '" + v + "' (expected literal or unit)");
}

// Missing keys keep their defaults; unknown keys are rejected so typos do
// not pass silently.
inline Scenario scenario_from_json(const nlohmann::json &j)
{
    static const std::vector<std::string> known = {
        "schema_version", "bs_array", "ue_array", "n_rf", "n_ue", "carrier_hz", "bandwidth_hz", "p_t_watts",
        "ue_pathloss_range_db", "paths_per_ue", "ue_noise_figure_db", "sat_noise_figure_db", "satellites",
        "optimizer", "inr_power_factor", "rng_seed", "trial_count"};
    if (!j.is_object())
        throw config_error("scenario: top level must be an object");
    for (const auto &[key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw config_error("scenario: unknown key '" + key + "'");
    if (!j.contains("schema_version"))
        throw config_error("scenario: missing schema_version");

    Scenario s;
    try
    {
        s.schema_version = j.at("schema_version").get<int>();
        if (j.contains("bs_array"))
            s.bs_array = detail::array_from_json(j["bs_array"]);
        if (j.contains("ue_array"))
            s.ue_array = detail::array_from_json(j["ue_array"]);
        s.n_rf = j.value("n_rf", s.n_rf);
        s.n_ue = j.value("n_ue", s.n_ue);
        s.carrier_hz = j.value("carrier_hz", s.carrier_hz);
        s.bandwidth_hz = j.value("bandwidth_hz", s.bandwidth_hz);
        s.p_t_watts = j.value("p_t_watts", s.p_t_watts);
        if (j.contains("ue_pathloss_range_db"))
        {
            const auto &r = j["ue_pathloss_range_db"];
            s.ue_pathloss_min_db = r.at(0).get<double>();
            s.ue_pathloss_max_db = r.at(1).get<double>();
        }
        s.paths_per_ue = j.value("paths_per_ue", s.paths_per_ue);
        s.ue_noise_figure_db = j.value("ue_noise_figure_db", s.ue_noise_figure_db);
        s.sat_noise_figure_db = j.value("sat_noise_figure_db", s.sat_noise_figure_db);
        if (j.contains("satellites"))
        {
            const auto &js = j["satellites"];
            auto &sc = s.satellites;
            const std::string mode = js.value("mode", std::string("random"));
            if (mode == "random")
                sc.mode = SatelliteMode::random;
            else if (mode == "fixed")
                sc.mode = SatelliteMode::fixed;
            else
                throw config_error("scenario: unknown satellite mode '" + mode + "'");
            sc.count = js.value("count", sc.count);
            if (js.contains("elevation_range_deg"))
            {
                sc.min_elevation_deg = js["elevation_range_deg"].at(0).get<double>();
                sc.max_elevation_deg = js["elevation_range_deg"].at(1).get<double>();
            }
            sc.altitude_m = js.value("altitude_m", sc.altitude_m);
            sc.atmospheric_loss_db = js.value("atmospheric_loss_db", sc.atmospheric_loss_db);
            sc.fixed.clear();
            if (js.contains("fixed"))
                for (const auto &g : js["fixed"])
                {
                    SatelliteGeometry geo;
                    geo.azimuth = g.at("azimuth_deg").get<double>() * detail::deg;
                    geo.elevation = g.at("elevation_deg").get<double>() * detail::deg;
                    geo.atmospheric_loss = g.value("atmospheric_loss_db", sc.atmospheric_loss_db);
                    geo.slant_range = g.contains("slant_range_m") ? g["slant_range_m"].get<double>()
                                                                  : slant_range_m(geo.elevation, sc.altitude_m);
                    sc.fixed.push_back(geo);
                }
        }
        if (j.contains("optimizer"))
        {
            const auto &jo = j["optimizer"];
            auto &o = s.optimizer;
            o.lambda_sat = jo.value("lambda_sat", o.lambda_sat);
            o.step_size = jo.value("step_size", o.step_size);
            o.iter_bb = jo.value("iter_bb", o.iter_bb);
            o.iter_rf = jo.value("iter_rf", o.iter_rf);
            o.outer_iters = jo.value("outer_iters", o.outer_iters);
        }
        if (j.contains("inr_power_factor"))
            s.inr_power_factor = parse_inr_power_factor(j["inr_power_factor"].get<std::string>());
        s.rng_seed = j.value("rng_seed", s.rng_seed);
        s.trial_count = j.value("trial_count", s.trial_count);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw config_error(std::string("scenario: ") + e.what());
    }
    s.validate();
    return s;
}

inline Scenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open scenario file '" + path + "'");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw config_error("scenario '" + path + "': " + e.what());
    }
    return scenario_from_json(j);
}

} // namespace satnull

#endif
