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

#include "nfjrc/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

#include "nfjrc/types.hpp"

namespace nfjrc {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPow53 = 9007199254740992.0;
} // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double inverse_q(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("inverse_q: probability must lie in (0, 1)");
    // Q(x) = erfc(x / sqrt 2) / 2
    return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

ConfidenceInterval binomial_ci(std::uint64_t successes, std::uint64_t trials, double level)
{
    if (trials == 0)
        throw std::invalid_argument("binomial_ci: trials must be >= 1");
    if (successes > trials)
        throw std::invalid_argument("binomial_ci: successes exceed trials");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("binomial_ci: level must lie in (0, 1)");

    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z = inverse_q(0.5 * (1.0 - level));
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;

    ConfidenceInterval ci;
    ci.level = level;
    ci.lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    ci.hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
    // Rounding can push an endpoint past the point estimate by an ulp.
    ci.lo = std::min(ci.lo, phat);
    ci.hi = std::max(ci.hi, phat);
    return ci;
}

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t RandomStream::next_u64()
{
    ++counter_;
    return mix64(key_ + counter_ * kGoldenGamma);
}

double RandomStream::uniform() { return static_cast<double>(next_u64() >> 11) / kTwoPow53; }

double RandomStream::uniform_open()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) / kTwoPow53;
}

double RandomStream::gaussian()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::complex<double> RandomStream::complex_gaussian(double variance)
{
    const double s = std::sqrt(0.5 * variance);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
}

std::complex<double> RandomStream::unit_phasor() { return std::polar(1.0, 2.0 * kPi * uniform()); }

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag)
{
    return mix64(mix64(master_seed ^ 0x6A09E667F3BCC908ULL) + mix64(tag + kGoldenGamma));
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id)
{
    return RandomStream(derive_seed(master_seed, stream_id));
}

} // namespace nfjrc
