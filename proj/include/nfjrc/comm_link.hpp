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

#include <cstddef>
#include <vector>

#include "nfjrc/types.hpp"

namespace nfjrc {

/// Transmit beamformers: one per data stream plus the radar beam. Symbols
/// are unit power, so beam norms carry the transmit power.
struct BeamformerSet {
    std::vector<cvec> comm_beams;  // u_k
    cvec radar_beam;               // v

    /// sum_k ||u_k||^2 + ||v||^2
    double total_power() const;

    Eigen::Index size() const { return radar_beam.size(); }

    void validate() const;

    /// All-zero beams with K streams.
    static BeamformerSet zeros(Eigen::Index n, std::size_t streams = 1);
};

struct RelayGain {
    cdouble f_rd{0.0, 0.0};
    double relay_power_budget = 0.0;
};

/// Whether the relayed SINR counts the forwarded radar signal as interference.
/// AsPrinted omits it; Strict adds |h_rd f_rd h_sr^T v|^2 to the denominator.
enum class RelayInterference { AsPrinted, Strict };

/// Amplify-and-forward gain normalising the relay output to its budget.
RelayGain af_gain(const cvec &h_sr, const BeamformerSet &beams, double noise_var_relay, double relay_power_budget);

/// Stage-1 SINR of stream k at the destination.
double sinr_direct(const cvec &h_sd, const BeamformerSet &beams, double noise_var_dest, std::size_t k = 0);

/// Stage-2 SINR of stream k forwarded by the relay.
double sinr_relayed(cdouble h_rd, const RelayGain &gain, const cvec &h_sr, const BeamformerSet &beams,
                    double noise_var_relay, double noise_var_dest, std::size_t k = 0,
                    RelayInterference mode = RelayInterference::AsPrinted);

/// log2(1 + sinr_d + sinr_r), bits/s/Hz
double mrc_rate(double sinr_d, double sinr_r);

/// Gamma = 2^rate - 1
double rate_threshold(double rate_target);

bool rate_constraint_satisfied(double sinr_d, double sinr_r, double gamma);

/// Unit-norm maximum-ratio transmit direction conj(h) / ||h||.
cvec mrt_direction(const cvec &h);

} // namespace nfjrc
