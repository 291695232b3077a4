// SPDX-License-Identifier: Apache-2.0
//
// nfjrc: near-field joint radar and communication link simulator
// Copyright (C) 2026 The nfjrc authors
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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "nfjrc/scenario_config.hpp"

using namespace nfjrc;
using nlohmann::json;

namespace {

std::string error_of(const json &j)
{
    try {
        config_from_json(j);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return {};
}

std::filesystem::path temp_file(const std::string &name, const std::string &text)
{
    const auto path = std::filesystem::temp_directory_path() / ("nfjrc_cfg_" + name);
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("defaults")
{
    CHECK(config_from_json(json::object()) == ScenarioConfig{});
    CHECK(load_scenario(temp_file("empty.json", "").string()) == ScenarioConfig{});
    CHECK(load_scenario(temp_file("blank.json", "  \n").string()) == ScenarioConfig{});
    const ScenarioConfig d;
    CHECK(d.constraint_targets().gamma_min == 31.0);
    CHECK(d.constraint_targets().pd_min == 0.6);
    CHECK(d.constraint_targets().pfa_max == 1e-6);
    CHECK(d.channels.noise_power_w() == doctest::Approx(1e-14).epsilon(1e-12));
    CHECK_NOTHROW(d.validate());
}

TEST_CASE("partial files override only what they name")
{
    const auto c = config_from_json(json::parse(R"({"array": {"n_antennas": 10}, "seed": 7})"));
    CHECK(c.array.n_antennas == 10);
    CHECK(c.seed == 7);
    CHECK(c.array.carrier_freq_hz == 28e9);
    CHECK(c.scene == SceneSection{});
}

TEST_CASE("unknown keys and bad values name the field")
{
    CHECK(error_of(json::parse(R"({"bogus": 1})")).find("bogus") != std::string::npos);
    CHECK(error_of(json::parse(R"({"array": {"n_antenna": 4}})")).find("array.n_antenna") != std::string::npos);
    CHECK(error_of(json::parse(R"({"channels": {"noise_var_dest_w": -1}})")).find("channels.noise_var_dest_w") !=
          std::string::npos);
    CHECK(error_of(json::parse(R"({"array": {"n_antennas": "five"}})")).find("array.n_antennas") !=
          std::string::npos);
    CHECK(error_of(json::parse(R"({"path_loss": {"kind": "umx"}})")).find("path_loss.kind") != std::string::npos);
    CHECK(error_of(json::parse(R"({"targets": {"pd_min": 1.5}})")).find("targets.pd_min") != std::string::npos);
    CHECK(error_of(json::parse(R"({"scene": {"target_angle_deg": 180}})")).find("scene.target_angle_deg") !=
          std::string::npos);
    CHECK(error_of(json::parse(R"({"output": {"format": "xml"}})")).find("output.format") != std::string::npos);
    CHECK(error_of(json::parse("[1, 2]")) != "");
    CHECK_THROWS_AS(load_scenario("/nonexistent/dir/cfg.json"), ConfigError);
    CHECK_THROWS_AS(load_scenario(temp_file("broken.json", "{ \"seed\": ").string()), ConfigError);
}

TEST_CASE("JSON round trip")
{
    ScenarioConfig c;
    c.array.spacing_m = 0.004;
    c.path_loss.kind = PathLossKind::UmiLos;
    c.channels.fading = Fading::Rayleigh;
    c.channels.relay_mode = RelayInterference::Strict;
    c.scene.reflectivity_phase = ReflectivityPhase::UniformRandom;
    c.detection.clutter_statistics = ClutterStatistics::FixedEnvelope;
    c.power_sweep.scale = SweepScale::Linear;
    c.optimizer.fixed_rho = 0.25;
    c.output.format = OutputFormat::Json;
    c.seed = 0xFFFFFFFFFFFFFFFFULL;
    CHECK(config_from_json(config_to_json(c)) == c);
    CHECK(config_from_json(json::parse(config_to_json(c).dump())) == c);
}

TEST_CASE("config hash")
{
    const ScenarioConfig a;
    ScenarioConfig b;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.output.directory = "elsewhere";
    b.output.format = OutputFormat::Json;
    CHECK(config_hash(a) == config_hash(b));
    b.seed = 2;
    CHECK(config_hash(a) != config_hash(b));
    ScenarioConfig c;
    c.detection.powers_dbm.push_back(55.0);
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("derived grids")
{
    ScenarioConfig c;
    const auto p = c.power_sweep.powers_w();
    REQUIRE(p.size() == 11);
    CHECK(p.front() == doctest::Approx(1e-3));
    CHECK(p.back() == doctest::Approx(100.0));
    CHECK(p[1] / p[0] == doctest::Approx(std::sqrt(10.0)));
    c.power_sweep.scale = SweepScale::Linear;
    const auto lin = c.power_sweep.powers_w();
    CHECK(lin[2] - lin[1] == doctest::Approx(lin[1] - lin[0]));
    const auto k = c.detection.kappa_grid();
    REQUIRE(k.size() == 21);
    CHECK(k.front() == 0.0);
    CHECK(k.back() == 200.0);
    CHECK(c.channels.relay_destination_distance_m() ==
          doctest::Approx(std::sqrt(500.0 * 500.0 + 1000.0 * 1000.0 - 2 * 500.0 * 1000.0 * std::cos(30.0 * kPi / 180))));
}

TEST_CASE("scenario construction")
{
    const ScenarioConfig c;
    const auto a = build_link_scenario(c);
    const auto b = build_link_scenario(c);
    CHECK(a.channels.h_sd == b.channels.h_sd);
    CHECK(a.alpha0 == b.alpha0);
    CHECK(a.radar.clutter.size() == 3);
    CHECK(std::abs(a.comm_direction.norm() - 1.0) < 1e-12);
    CHECK(std::abs(a.radar_direction.norm() - 1.0) < 1e-12);

    // placement depends on (seed, realization) only
    const auto s5 = build_scene(c, 28e9, 0.8, 3);
    const auto s28 = build_scene(c, 2.8e9, 0.1, 3);
    for (std::size_t l = 0; l < s5.clutter.size(); ++l) {
        CHECK(s5.clutter[l].position.range() == s28.clutter[l].position.range());
        CHECK(s5.clutter[l].position.angle() == s28.clutter[l].position.angle());
        CHECK(s5.clutter[l].position.range() <= c.scene.target_range_m);
    }
    const auto other = build_scene(c, 28e9, 0.8, 4);
    CHECK(other.clutter[0].position.range() != s5.clutter[0].position.range());
}
