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

#include <optional>
#include <vector>

#include "nfjrc/types.hpp"

namespace nfjrc {

/// Uniform linear array. Element spacing defaults to half a wavelength.
class ArrayConfig {
public:
    ArrayConfig(int n_antennas, double carrier_freq_hz, std::optional<double> spacing_m = std::nullopt);

    int n_antennas() const { return n_antennas_; }
    double carrier_freq() const { return carrier_freq_; }
    double spacing() const { return spacing_; }
    double wavelength() const { return kSpeedOfLight / carrier_freq_; }
    double aperture() const { return (n_antennas_ - 1) * spacing_; }

private:
    int n_antennas_;
    double carrier_freq_;
    double spacing_;
};

/// Range/angle of a point relative to the array centre. Angle is measured
/// from the array axis and must lie strictly inside (0, pi).
class PolarPosition {
public:
    PolarPosition(double range_m, double angle_rad);

    double range() const { return range_; }
    double angle() const { return angle_; }

private:
    double range_;
    double angle_;
};

/// Element offsets m - (N-1)/2, symmetric about the array centre.
std::vector<double> element_index_offsets(const ArrayConfig &cfg);

/// Euclidean distance from element offset n to pos.
double exact_distance(const ArrayConfig &cfg, const PolarPosition &pos, double n);

/// Second-order (Fresnel) expansion of exact_distance.
double fresnel_distance(const ArrayConfig &cfg, const PolarPosition &pos, double n);

/// Near-field steering vector with Fresnel phase, referenced to the centre.
cvec steering_vector(const ArrayConfig &cfg, const PolarPosition &pos);

/// Plane-wave steering vector exp(j k n d cos(theta)) for the same indexing.
cvec plane_wave_steering_vector(const ArrayConfig &cfg, double angle_rad);

/// 2 D^2 / lambda
double fraunhofer_distance(const ArrayConfig &cfg);

} // namespace nfjrc
