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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfjrc/comm_link.hpp"
#include "nfjrc/output.hpp"
#include "nfjrc/power_allocation.hpp"
#include "nfjrc/propagation.hpp"

namespace nfjrc {

/// Schema or invariant violation; the message starts with the field path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ArraySection {
    int n_antennas = 5;
    double carrier_freq_hz = 28e9;
    std::optional<double> spacing_m;  // default lambda / 2

    bool operator==(const ArraySection &) const = default;
};

struct SceneSection {
    int clutter_count = 3;
    double target_range_m = 5.0;
    double target_angle_deg = 60.0;
    double angle_exclusion_rad = 0.05;
    double rcs_scale = 1.0;
    ReflectivityPhase reflectivity_phase = ReflectivityPhase::Fixed0;
    double sigma_c = 0.8;  // clutter level for tradeoff and optimize
    /// Scale sigma_l by the two-way path gain at each clutter range, the same
    /// convention as rcs_scale for the target. false: sigma_l in noise units.
    bool clutter_path_loss = true;
    std::uint64_t realization = 0;

    bool operator==(const SceneSection &) const = default;
};

struct PathLossSection {
    PathLossKind kind = PathLossKind::FreeSpace;
    double bs_height_m = 10.0;
    double ut_height_m = 1.5;

    bool operator==(const PathLossSection &) const = default;
};

struct ChannelSection {
    double relay_range_m = 500.0;
    double relay_angle_deg = 110.0;
    double destination_range_m = 1000.0;
    double destination_angle_deg = 140.0;
    Fading fading = Fading::LoS;
    double noise_power_dbm = -110.0;             // radar receiver
    double noise_var_dest_w = 1e-12;             // -90 dBm, wider comm band
    double noise_var_relay_w = 1e-12;
    double relay_power_dbm = 20.0;
    RelayInterference relay_mode = RelayInterference::AsPrinted;

    double noise_power_w() const;
    double relay_destination_distance_m() const;

    bool operator==(const ChannelSection &) const = default;
};

enum class SweepScale { Log, Linear };

/// Transmit power axis. Log: points equally spaced in dBm; Linear: in watts.
struct PowerSweepSection {
    double min_dbm = 0.0;
    double max_dbm = 50.0;
    int points = 11;
    SweepScale scale = SweepScale::Log;

    std::vector<double> powers_w() const;

    bool operator==(const PowerSweepSection &) const = default;
};

struct ScnrSweepSection {
    std::vector<int> antennas{5, 10};
    std::vector<double> carrier_ghz{2.8, 28.0};
    int realizations = 100;
    double rho = 1.0;

    bool operator==(const ScnrSweepSection &) const = default;
};

struct ClutterLevelsSection {
    double light = 0.1;
    double intense = 0.8;

    bool operator==(const ClutterLevelsSection &) const = default;
};

struct DetectionSection {
    double eta = 1e-6;
    double kappa_min = 0.0;
    double kappa_max = 200.0;
    int kappa_points = 21;
    std::vector<double> powers_dbm{40.0, 45.0, 50.0};
    double rho = 1.0;
    std::uint64_t trials = 100000;
    double ci_level = 0.95;
    ClutterStatistics clutter_statistics = ClutterStatistics::Gaussian;

    std::vector<double> kappa_grid() const;

    bool operator==(const DetectionSection &) const = default;
};

struct TargetsSection {
    double rate_bps_hz = 5.0;
    double pfa_max = 1e-6;
    double pd_min = 0.6;

    bool operator==(const TargetsSection &) const = default;
};

struct OptimizerSection {
    double p_max_w = 100.0;
    double p_min_w = 1e-3;
    int power_points = 64;
    int rho_points = 21;
    int kappa_points = 101;
    double kappa_span = 10.0;
    double tol_w = 0.0;  // 0: 1e-3 * p_max
    std::optional<double> fixed_rho;
    bool np_threshold = true;
    // tradeoff power axis
    double tradeoff_min_dbm = 30.0;
    double tradeoff_max_dbm = 50.0;
    int tradeoff_points = 21;

    SearchGrid search_grid() const;
    std::vector<double> tradeoff_powers_w() const;

    bool operator==(const OptimizerSection &) const = default;
};

struct OutputSection {
    std::string directory = "out";
    OutputFormat format = OutputFormat::Csv;

    bool operator==(const OutputSection &) const = default;
};

struct ScenarioConfig {
    ArraySection array;
    SceneSection scene;
    PathLossSection path_loss;
    ChannelSection channels;
    PowerSweepSection power_sweep;
    ScnrSweepSection scnr_sweep;
    ClutterLevelsSection clutter_levels;
    DetectionSection detection;
    TargetsSection targets;
    OptimizerSection optimizer;
    OutputSection output;
    std::uint64_t seed = 1;

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    ConstraintTargets constraint_targets() const;
    PathLossModel path_loss_model() const;

    bool operator==(const ScenarioConfig &) const = default;
};

/// Strict parse: unknown keys and wrong types are errors; missing keys keep
/// their defaults. The result is validated.
ScenarioConfig config_from_json(const nlohmann::json &j);
nlohmann::json config_to_json(const ScenarioConfig &cfg);

/// Missing file is a ConfigError. An empty file yields the defaults.
ScenarioConfig load_scenario(const std::string &path);

/// FNV-1a 64 over the canonical (sorted-key, compact) JSON of every section
/// except output, as 16 hex digits.
std::string config_hash(const ScenarioConfig &cfg);

/// Stream tags used to derive per-purpose random streams from the seed.
enum class StreamTag : std::uint64_t {
    ClutterPlacement = 1,
    Reflectivity = 2,
    CommChannel = 3,
    Detection = 4,
    Covariance = 5,
};

/// Full link for one array and clutter level. Clutter placement depends only
/// on (seed, realization), so it is shared across N, f_c and sigma_c.
LinkScenario build_link_scenario(const ScenarioConfig &cfg, int n_antennas, double carrier_freq_hz, double sigma_c,
                                 std::uint64_t realization);

/// Same, with the array and sigma_c of the config's scene section.
LinkScenario build_link_scenario(const ScenarioConfig &cfg);

/// Scene (target plus clutter records) behind build_link_scenario.
Scene build_scene(const ScenarioConfig &cfg, double carrier_freq_hz, double sigma_c, std::uint64_t realization);

} // namespace nfjrc
