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
#include <stdexcept>

#include "nfjrc/comm_link.hpp"
#include "nfjrc/stats.hpp"

using namespace nfjrc;

namespace {

cvec random_vec(RandomStream &rng, Eigen::Index n, double var = 1.0)
{
    cvec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = rng.complex_gaussian(var);
    return v;
}

BeamformerSet random_beams(RandomStream &rng, Eigen::Index n)
{
    BeamformerSet b;
    b.comm_beams = {random_vec(rng, n)};
    b.radar_beam = random_vec(rng, n);
    return b;
}

// sum_i a_i b_i written as an explicit loop
cdouble dot_t(const cvec &a, const cvec &b)
{
    cdouble s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace

TEST_CASE("AF gain")
{
    auto rng = derive_stream(11, 1);
    const cvec h = random_vec(rng, 6);
    const auto zero = BeamformerSet::zeros(6);
    CHECK(std::abs(af_gain(h, zero, 0.5, 2.0).f_rd - std::sqrt(2.0 / 0.5)) < 1e-15);

    const auto beams = random_beams(rng, 6);
    const auto g1 = af_gain(h, beams, 0.3, 1.0);
    const auto g2 = af_gain(h, beams, 0.3, 2.0);
    CHECK(std::abs(g2.f_rd / g1.f_rd - std::sqrt(2.0)) < 1e-14);
    CHECK(g1.f_rd.imag() == 0.0);
    CHECK(g1.f_rd.real() > 0.0);

    for (int i = 0; i < 1000; ++i) {
        const cvec hr = random_vec(rng, 5, rng.uniform(0.01, 10));
        const auto b = random_beams(rng, 5);
        const double nr = rng.uniform(1e-3, 3), budget = rng.uniform(1e-2, 100);
        const double fr = std::norm(af_gain(hr, b, nr, budget).f_rd);
        const double recv = std::norm(dot_t(hr, b.comm_beams[0])) + std::norm(dot_t(hr, b.radar_beam)) + nr;
        CHECK(std::abs(fr * recv - budget) <= 1e-12 * budget);
    }
    CHECK_THROWS_AS(af_gain(h, beams, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(af_gain(h, beams, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("direct SINR")
{
    auto rng = derive_stream(11, 2);
    const cvec h = random_vec(rng, 4);
    auto beams = random_beams(rng, 4);

    auto silent = beams;
    silent.radar_beam.setZero();
    CHECK(sinr_direct(h, silent, 0.7) == doctest::Approx(std::norm(dot_t(h, beams.comm_beams[0])) / 0.7));

    // u orthogonal to conj(h) gives h^T u = 0
    auto orth = beams;
    const cvec hc = h.conjugate();
    orth.comm_beams[0] -= hc * (hc.dot(orth.comm_beams[0]) / hc.squaredNorm());
    CHECK(sinr_direct(h, orth, 0.7) < 1e-28);

    auto scaled = beams;
    const cdouble c(1.5, -2.0);
    scaled.comm_beams[0] *= c;
    CHECK(sinr_direct(h, scaled, 0.7) == doctest::Approx(std::norm(c) * sinr_direct(h, beams, 0.7)).epsilon(1e-12));

    // non-increasing as the radar beam grows along a fixed direction
    double prev = INFINITY;
    for (double s = 0.0; s < 5.0; s += 0.25) {
        auto b = beams;
        b.radar_beam *= s;
        const double v = sinr_direct(h, b, 0.7);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("relayed SINR")
{
    auto rng = derive_stream(11, 3);
    const cvec h_sr = random_vec(rng, 4);
    const cdouble h_rd(0.3, 0.8);
    const auto beams = random_beams(rng, 4);

    CHECK(sinr_relayed(h_rd, RelayGain{}, h_sr, beams, 0.2, 0.5) == 0.0);

    const auto g = af_gain(h_sr, beams, 0.2, 3.0);
    const double limit = std::norm(dot_t(h_sr, beams.comm_beams[0])) / 0.2;
    CHECK(sinr_relayed(h_rd, g, h_sr, beams, 0.2, 1e-15) == doctest::Approx(limit).epsilon(1e-9));

    // common phase rotation of h_rd, h_sr and u leaves the ratio unchanged
    const cdouble ph = std::polar(1.0, 0.77);
    auto rot = beams;
    rot.comm_beams[0] *= ph;
    const auto grot = af_gain(h_sr * ph, rot, 0.2, 3.0);
    CHECK(sinr_relayed(h_rd * ph, grot, h_sr * ph, rot, 0.2, 0.5) ==
          doctest::Approx(sinr_relayed(h_rd, g, h_sr, beams, 0.2, 0.5)).epsilon(1e-12));

    CHECK(sinr_relayed(h_rd, g, h_sr, beams, 0.2, 0.5, 0, RelayInterference::Strict) <
          sinr_relayed(h_rd, g, h_sr, beams, 0.2, 0.5, 0, RelayInterference::AsPrinted));
}

TEST_CASE("relayed SINR matches the simulated relayed signal")
{
    // y = h_rd f (h_sr^T (u s + v s0) + n_r) + n_d; the stream-of-interest power
    // and the noise power are estimated separately from simulated samples.
    auto rng = derive_stream(11, 4);
    const cvec h_sr = random_vec(rng, 3);
    const cdouble h_rd(0.9, -0.4);
    const auto beams = random_beams(rng, 3);
    const double nr = 0.4, nd = 0.25;
    const auto g = af_gain(h_sr, beams, nr, 2.0);

    double signal = 0, noise = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const cdouble s = rng.complex_gaussian(1.0);
        const cdouble n_r = rng.complex_gaussian(nr);
        const cdouble n_d = rng.complex_gaussian(nd);
        signal += std::norm(h_rd * g.f_rd * dot_t(h_sr, beams.comm_beams[0]) * s);
        noise += std::norm(h_rd * g.f_rd * n_r + n_d);
    }
    CHECK(std::abs((signal / noise) / sinr_relayed(h_rd, g, h_sr, beams, nr, nd) - 1.0) < 0.02);
}

TEST_CASE("rate and threshold")
{
    CHECK(mrc_rate(0, 0) == 0.0);
    CHECK(mrc_rate(0.5, 0.5) == 1.0);
    CHECK(mrc_rate(3, 0) == 2.0);
    CHECK(rate_threshold(0) == 0.0);
    CHECK(rate_threshold(1) == 1.0);
    CHECK(rate_threshold(5) == 31.0);
    CHECK(rate_constraint_satisfied(31, 0, 31));
    CHECK_FALSE(rate_constraint_satisfied(15, 15, 31));

    auto rng = derive_stream(11, 5);
    for (int i = 0; i < 2000; ++i) {
        const double d = rng.uniform(0, 60), r = rng.uniform(0, 60), target = rng.uniform(0, 7);
        if (std::abs(mrc_rate(d, r) - target) > 1e-12) {
            const bool by_rate = mrc_rate(d, r) >= target;
            CHECK(rate_constraint_satisfied(d, r, rate_threshold(target)) == by_rate);
        }
        CHECK(mrc_rate(d, r) >= mrc_rate(d, 0));
    }
}

TEST_CASE("scaling the transmit beam and relay budget does not reduce the rate")
{
    auto rng = derive_stream(11, 6);
    for (int i = 0; i < 200; ++i) {
        const cvec h_sd = random_vec(rng, 4), h_sr = random_vec(rng, 4);
        const auto beams = random_beams(rng, 4);
        auto rate = [&](double c) {
            auto b = beams;
            b.comm_beams[0] *= c;
            const auto g = af_gain(h_sr, b, 0.3, c * 1.0);
            return mrc_rate(sinr_direct(h_sd, b, 0.5), sinr_relayed(cdouble(0.6, 0.1), g, h_sr, b, 0.3, 0.5));
        };
        CHECK(rate(1.7) >= rate(1.0));
    }
}

TEST_CASE("MRT direction")
{
    auto rng = derive_stream(11, 7);
    const cvec h = random_vec(rng, 5);
    const cvec u = mrt_direction(h);
    CHECK(std::abs(u.norm() - 1.0) < 1e-14);
    CHECK(std::abs(dot_t(h, u) - h.norm()) < 1e-12);
    CHECK_THROWS_AS(mrt_direction(cvec::Zero(3)), std::invalid_argument);
}
