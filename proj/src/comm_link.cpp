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

#include "nfjrc/comm_link.hpp"

#include <cmath>
#include <stdexcept>

namespace nfjrc {

double BeamformerSet::total_power() const
{
    double p = radar_beam.squaredNorm();
    for (const auto &u : comm_beams)
        p += u.squaredNorm();
    return p;
}

void BeamformerSet::validate() const
{
    for (const auto &u : comm_beams)
        if (u.size() != radar_beam.size())
            throw std::invalid_argument("BeamformerSet: all beams must have the same length");
    if (!std::isfinite(total_power()))
        throw std::invalid_argument("BeamformerSet: non-finite beam power");
}

BeamformerSet BeamformerSet::zeros(Eigen::Index n, std::size_t streams)
{
    BeamformerSet b;
    b.comm_beams.assign(streams, cvec::Zero(n));
    b.radar_beam = cvec::Zero(n);
    return b;
}

RelayGain af_gain(const cvec &h_sr, const BeamformerSet &beams, double noise_var_relay, double relay_power_budget)
{
    if (!(relay_power_budget > 0.0))
        throw std::invalid_argument("af_gain: relay_power_budget must be positive");
    if (!(noise_var_relay > 0.0))
        throw std::invalid_argument("af_gain: noise_var_relay must be positive");
    double received = std::norm(bilinear(h_sr, beams.radar_beam)) + noise_var_relay;
    for (const auto &u : beams.comm_beams)
        received += std::norm(bilinear(h_sr, u));
    return {cdouble(std::sqrt(relay_power_budget / received), 0.0), relay_power_budget};
}

double sinr_direct(const cvec &h_sd, const BeamformerSet &beams, double noise_var_dest, std::size_t k)
{
    if (!(noise_var_dest > 0.0))
        throw std::invalid_argument("sinr_direct: noise_var_dest must be positive");
    const double signal = std::norm(bilinear(h_sd, beams.comm_beams.at(k)));
    const double radar = std::norm(bilinear(h_sd, beams.radar_beam));
    return signal / (radar + noise_var_dest);
}

double sinr_relayed(cdouble h_rd, const RelayGain &gain, const cvec &h_sr, const BeamformerSet &beams,
                    double noise_var_relay, double noise_var_dest, std::size_t k, RelayInterference mode)
{
    if (!(noise_var_relay > 0.0) || !(noise_var_dest > 0.0))
        throw std::invalid_argument("sinr_relayed: noise variances must be positive");
    const cdouble g = h_rd * gain.f_rd;
    const double signal = std::norm(g * bilinear(h_sr, beams.comm_beams.at(k)));
    double denom = std::norm(g) * noise_var_relay + noise_var_dest;
    if (mode == RelayInterference::Strict)
        denom += std::norm(g * bilinear(h_sr, beams.radar_beam));
    return signal / denom;
}

double mrc_rate(double sinr_d, double sinr_r)
{
    if (sinr_d < 0.0 || sinr_r < 0.0)
        throw std::invalid_argument("mrc_rate: SINRs must be non-negative");
    return std::log2(1.0 + sinr_d + sinr_r);
}

double rate_threshold(double rate_target)
{
    if (rate_target < 0.0)
        throw std::invalid_argument("rate_threshold: rate target must be non-negative");
    return std::exp2(rate_target) - 1.0;
}

bool rate_constraint_satisfied(double sinr_d, double sinr_r, double gamma) { return sinr_d + sinr_r >= gamma; }

cvec mrt_direction(const cvec &h)
{
    const double n = h.norm();
    if (!(n > 0.0))
        throw std::invalid_argument("mrt_direction: zero channel");
    return h.conjugate() / n;
}

} // namespace nfjrc
