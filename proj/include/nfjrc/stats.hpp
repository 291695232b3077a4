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

#include <complex>
#include <cstdint>

namespace nfjrc {

/// Gaussian upper-tail probability Q(x) = P(Z > x), Z ~ N(0, 1).
double q_function(double x);

/// Inverse of q_function on (0, 1). Throws std::domain_error outside.
double inverse_q(double p);

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 1.0;
    double level = 0.95;

    bool contains(double p) const { return lo <= p && p <= hi; }
};

/// Wilson score interval for a binomial proportion.
ConfidenceInterval binomial_ci(std::uint64_t successes, std::uint64_t trials, double level = 0.95);

/// Counter-based random stream.
///
/// Output i is the SplitMix64 finalizer applied to key + i * golden-gamma, so a
/// stream is fully described by (key, counter) and the raw u64 sequence is
/// bit-identical on every platform. Gaussian variates use Box-Muller on top of
/// the uniform stream. A stream is single-owner; derive one per task instead
/// of sharing.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform on the open interval (0, 1).
    double uniform_open();

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal variate.
    double gaussian();

    /// Circularly-symmetric complex Gaussian CN(0, variance).
    std::complex<double> complex_gaussian(double variance = 1.0);

    /// Uniform phase on [0, 2pi) as a unit-modulus complex number.
    std::complex<double> unit_phasor();

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Deterministic stream for (master_seed, stream_id). Distinct ids give
/// statistically independent streams.
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

/// Combine a seed with a tag into a new 64-bit seed (for nested derivation).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag);

} // namespace nfjrc
