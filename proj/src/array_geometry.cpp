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

#include "nfjrc/array_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace nfjrc {

ArrayConfig::ArrayConfig(int n_antennas, double carrier_freq_hz, std::optional<double> spacing_m)
    : n_antennas_(n_antennas), carrier_freq_(carrier_freq_hz)
{
    if (n_antennas < 1)
        throw std::invalid_argument("ArrayConfig: n_antennas must be >= 1");
    if (!(carrier_freq_hz > 0.0) || !std::isfinite(carrier_freq_hz))
        throw std::invalid_argument("ArrayConfig: carrier_freq must be positive");
    spacing_ = spacing_m.value_or(0.5 * kSpeedOfLight / carrier_freq_hz);
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw std::invalid_argument("ArrayConfig: spacing must be positive");
}

PolarPosition::PolarPosition(double range_m, double angle_rad) : range_(range_m), angle_(angle_rad)
{
    if (!(range_m > 0.0) || !std::isfinite(range_m))
        throw std::invalid_argument("PolarPosition: range must be positive");
    // Endfire degrades the Fresnel expansion; reject it.
    if (!(angle_rad > 0.0 && angle_rad < kPi))
        throw std::invalid_argument("PolarPosition: angle must lie strictly inside (0, pi)");
}

std::vector<double> element_index_offsets(const ArrayConfig &cfg)
{
    const int n = cfg.n_antennas();
    const double centre = 0.5 * (n - 1);
    std::vector<double> offsets(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m)
        offsets[static_cast<std::size_t>(m)] = m - centre;
    return offsets;
}

double exact_distance(const ArrayConfig &cfg, const PolarPosition &pos, double n)
{
    const double r = pos.range();
    const double nd = n * cfg.spacing();
    return std::sqrt(r * r + nd * nd - 2.0 * r * nd * std::cos(pos.angle()));
}

double fresnel_distance(const ArrayConfig &cfg, const PolarPosition &pos, double n)
{
    const double r = pos.range();
    const double nd = n * cfg.spacing();
    return r - nd * std::cos(pos.angle()) + nd * nd / (2.0 * r);
}

cvec steering_vector(const ArrayConfig &cfg, const PolarPosition &pos)
{
    const double k = 2.0 * kPi / cfg.wavelength();
    const double cos_theta = std::cos(pos.angle());
    const double r = pos.range();
    const double d = cfg.spacing();
    const auto offsets = element_index_offsets(cfg);

    cvec a(cfg.n_antennas());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double nd = offsets[static_cast<std::size_t>(i)] * d;
        // fresnel_distance - r, evaluated without the cancelling r terms
        const double path_difference = -nd * cos_theta + nd * nd / (2.0 * r);
        a(i) = std::polar(1.0, -k * path_difference);
    }
    return a;
}

cvec plane_wave_steering_vector(const ArrayConfig &cfg, double angle_rad)
{
    const double k = 2.0 * kPi / cfg.wavelength();
    const double cos_theta = std::cos(angle_rad);
    const auto offsets = element_index_offsets(cfg);
    cvec a(cfg.n_antennas());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        a(i) = std::polar(1.0, k * offsets[static_cast<std::size_t>(i)] * cfg.spacing() * cos_theta);
    return a;
}

double fraunhofer_distance(const ArrayConfig &cfg)
{
    const double aperture = cfg.aperture();
    return 2.0 * aperture * aperture / cfg.wavelength();
}

} // namespace nfjrc
