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

#include "nfjrc/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nfjrc {

namespace {

double free_space_db(double freq_hz, double dist_m)
{
    return 20.0 * std::log10(4.0 * kPi * dist_m * freq_hz / kSpeedOfLight);
}

// TR 38.901 Table 7.4.1-1, UMi street canyon, LOS. Distances below 10 m
// extend PL1; the breakpoint uses effective heights h - 1 m.
double umi_los_db(const PathLossModel &m, double freq_hz, double dist3d)
{
    const double fc_ghz = freq_hz * 1e-9;
    const double dh = m.bs_height_m - m.ut_height_m;
    const double d2d = std::sqrt(std::max(dist3d * dist3d - dh * dh, 0.0));
    const double h_bs_eff = m.bs_height_m - 1.0;
    const double h_ut_eff = m.ut_height_m - 1.0;
    const double d_bp = 4.0 * h_bs_eff * h_ut_eff * freq_hz / kSpeedOfLight;

    const double pl1 = 32.4 + 21.0 * std::log10(dist3d) + 20.0 * std::log10(fc_ghz);
    if (d2d <= d_bp)
        return pl1;
    return 32.4 + 40.0 * std::log10(dist3d) + 20.0 * std::log10(fc_ghz) -
           9.5 * std::log10(d_bp * d_bp + dh * dh);
}

} // namespace

double path_loss_db(const PathLossModel &model, double freq_hz, double dist_m)
{
    if (!(dist_m > 0.0))
        throw std::invalid_argument("path_loss_db: distance must be positive");
    if (!(freq_hz > 0.0))
        throw std::invalid_argument("path_loss_db: frequency must be positive");
    switch (model.kind) {
    case PathLossKind::FreeSpace:
        return free_space_db(freq_hz, dist_m);
    case PathLossKind::UmiLos:
        if (!(model.bs_height_m > 1.0 && model.ut_height_m > 1.0))
            throw std::invalid_argument("path_loss_db: UMi antenna heights must exceed 1 m");
        return umi_los_db(model, freq_hz, dist_m);
    }
    throw std::invalid_argument("path_loss_db: unknown model");
}

double path_gain(const PathLossModel &model, double freq_hz, double dist_m)
{
    return std::pow(10.0, -path_loss_db(model, freq_hz, dist_m) / 20.0);
}

void ChannelSet::validate(int n_antennas) const
{
    if (h_sd.size() != n_antennas || h_sr.size() != n_antennas)
        throw std::invalid_argument("ChannelSet: channel vectors must have length N = " + std::to_string(n_antennas));
    if (!(noise_var_dest > 0.0) || !(noise_var_relay > 0.0))
        throw std::invalid_argument("ChannelSet: noise variances must be positive");
}

cvec synthesize_comm_channel(const ArrayConfig &cfg, const PolarPosition &pos, const PathLossModel &model,
                             Fading fading, RandomStream &rng)
{
    const double g = path_gain(model, cfg.carrier_freq(), pos.range());
    if (fading == Fading::LoS)
        return g * steering_vector(cfg, pos);

    cvec h(cfg.n_antennas());
    for (Eigen::Index i = 0; i < h.size(); ++i)
        h(i) = rng.complex_gaussian(g * g);
    return h;
}

cdouble synthesize_scalar_channel(double freq_hz, double dist_m, const PathLossModel &model, Fading fading,
                                  RandomStream &rng)
{
    const double g = path_gain(model, freq_hz, dist_m);
    if (fading == Fading::Rayleigh)
        return rng.complex_gaussian(g * g);
    const double k = 2.0 * kPi * freq_hz / kSpeedOfLight;
    return std::polar(g, -std::fmod(k * dist_m, 2.0 * kPi));
}

cdouble target_reflectivity(const PathLossModel &model, double freq_hz, double range_m, double rcs_scale,
                            RandomStream &rng, ReflectivityPhase phase)
{
    if (!(range_m > 0.0))
        throw std::invalid_argument("target_reflectivity: range must be positive");
    if (!(rcs_scale >= 0.0))
        throw std::invalid_argument("target_reflectivity: rcs_scale must be non-negative");
    const double g = path_gain(model, freq_hz, range_m);
    const double magnitude = rcs_scale * g * g;
    if (phase == ReflectivityPhase::Fixed0)
        return {magnitude, 0.0};
    return magnitude * rng.unit_phasor();
}

std::vector<ClutterElement> make_clutter_scene(RandomStream &rng, int count, double max_range, double sigma_c,
                                               double angle_exclusion, double target_angle)
{
    if (count < 0)
        throw std::invalid_argument("make_clutter_scene: clutter count must be >= 0");
    if (!(max_range > kMinClutterRange))
        throw std::invalid_argument("make_clutter_scene: max_range must exceed the 0.5 m minimum clutter range");
    if (!(sigma_c >= 0.0))
        throw std::invalid_argument("make_clutter_scene: sigma_c must be non-negative");
    if (!(angle_exclusion >= 0.0))
        throw std::invalid_argument("make_clutter_scene: angle_exclusion must be non-negative");

    // Allowed angles: (0, lo_end) U (hi_start, pi)
    const double lo_end = std::clamp(target_angle - angle_exclusion, 0.0, kPi);
    const double hi_start = std::clamp(target_angle + angle_exclusion, 0.0, kPi);
    const double allowed = lo_end + (kPi - hi_start);
    if (!(allowed > 0.0))
        throw std::invalid_argument("make_clutter_scene: exclusion window covers all of (0, pi)");

    std::vector<ClutterElement> clutter;
    clutter.reserve(static_cast<std::size_t>(count));
    for (int l = 0; l < count; ++l) {
        const double range = max_range - (max_range - kMinClutterRange) * rng.uniform();
        const double t = allowed * rng.uniform_open();
        const double angle = t < lo_end ? t : hi_start + (t - lo_end);
        clutter.push_back({PolarPosition(range, angle), sigma_c});
    }
    return clutter;
}

std::vector<cdouble> draw_clutter_amplitudes(const std::vector<ClutterElement> &clutter,
                                             ClutterStatistics statistics, RandomStream &rng)
{
    std::vector<cdouble> alpha;
    alpha.reserve(clutter.size());
    for (const auto &c : clutter) {
        if (statistics == ClutterStatistics::Gaussian)
            alpha.push_back(rng.complex_gaussian(c.amplitude_scale * c.amplitude_scale));
        else
            alpha.push_back(c.amplitude_scale * rng.unit_phasor());
    }
    return alpha;
}

} // namespace nfjrc
