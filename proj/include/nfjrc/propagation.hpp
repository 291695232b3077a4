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

#include <vector>

#include "nfjrc/array_geometry.hpp"
#include "nfjrc/stats.hpp"
#include "nfjrc/types.hpp"

namespace nfjrc {

enum class PathLossKind { FreeSpace, UmiLos };

/// Path-loss model. UmiLos is the 3GPP TR 38.901 UMi street-canyon LoS
/// model; the antenna heights only matter for that kind.
struct PathLossModel {
    PathLossKind kind = PathLossKind::FreeSpace;
    double bs_height_m = 10.0;
    double ut_height_m = 1.5;
};

/// Loss in dB. Throws std::invalid_argument for non-positive distance or frequency.
double path_loss_db(const PathLossModel &model, double freq_hz, double dist_m);

/// Linear amplitude gain 10^(-loss/20).
double path_gain(const PathLossModel &model, double freq_hz, double dist_m);

enum class Fading { LoS, Rayleigh };
enum class ReflectivityPhase { Fixed0, UniformRandom };

/// alpha_l per detection trial: complex Gaussian with std-dev scale sigma_l
/// (Gaussian) or |alpha_l| = sigma_l with uniform phase (FixedEnvelope).
enum class ClutterStatistics { Gaussian, FixedEnvelope };

struct Target {
    PolarPosition position;
    cdouble reflectivity;
};

struct ClutterElement {
    PolarPosition position;
    double amplitude_scale = 0.0;  // sigma_l
};

struct Scene {
    Target target;
    std::vector<ClutterElement> clutter;
};

/// Communication channels of the cooperative link.
struct ChannelSet {
    cvec h_sd;                   // source -> destination
    cvec h_sr;                   // source -> relay
    cdouble h_rd{1.0, 0.0};      // relay -> destination
    double noise_var_dest = 1.0;
    double noise_var_relay = 1.0;

    void validate(int n_antennas) const;
};

/// LoS: g * steering_vector; Rayleigh: i.i.d. CN(0, g^2) entries.
cvec synthesize_comm_channel(const ArrayConfig &cfg, const PolarPosition &pos, const PathLossModel &model,
                             Fading fading, RandomStream &rng);

/// Scalar single-antenna link (relay -> destination).
cdouble synthesize_scalar_channel(double freq_hz, double dist_m, const PathLossModel &model, Fading fading,
                                  RandomStream &rng);

/// Two-way target reflectivity: |alpha_0| = rcs_scale * 10^(-2 PL / 20).
cdouble target_reflectivity(const PathLossModel &model, double freq_hz, double range_m, double rcs_scale,
                            RandomStream &rng, ReflectivityPhase phase);

inline constexpr double kMinClutterRange = 0.5;  // metres

/// L clutter records: range uniform on (0.5, max_range], angle uniform on
/// (0, pi) minus a window of +/- angle_exclusion around target_angle.
std::vector<ClutterElement> make_clutter_scene(RandomStream &rng, int count, double max_range, double sigma_c,
                                               double angle_exclusion, double target_angle);

/// One realization of the clutter amplitudes alpha_l.
std::vector<cdouble> draw_clutter_amplitudes(const std::vector<ClutterElement> &clutter,
                                             ClutterStatistics statistics, RandomStream &rng);

} // namespace nfjrc
