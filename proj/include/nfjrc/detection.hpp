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
#include <vector>

#include "nfjrc/propagation.hpp"
#include "nfjrc/radar_sensing.hpp"
#include "nfjrc/stats.hpp"
#include "nfjrc/types.hpp"

namespace nfjrc {

/// Parameters of the Gaussian test statistic for a fixed receive beam w and
/// known transmit snapshot x.
struct DetectionStatisticParams {
    cdouble mu1;        // alpha_0 w^H A x
    double sigma2;      // sum_l sigma_l^2 |w^H A_l x|^2 + ||w||^2
    double eta = 1.0;   // LRT threshold
    double kappa = 0.0; // threshold on T

    DetectionStatisticParams with_kappa(double k) const
    {
        DetectionStatisticParams p = *this;
        p.kappa = k;
        return p;
    }
};

/// mu1, sigma2 and kappa = sigma2 ln(eta) + |mu1|^2. Throws for w = 0 or eta <= 0.
DetectionStatisticParams statistic_params(const cvec &w, cdouble alpha0, const RadarGeometry &geometry,
                                          const cvec &x, double eta);
DetectionStatisticParams statistic_params(const ArrayConfig &cfg, const cvec &w, const Scene &scene, const cvec &x,
                                          double eta);

/// T = 2 Re(y conj(mu1))
double test_statistic(cdouble y, const DetectionStatisticParams &params);

enum class Hypothesis { H0, H1 };

/// H1 iff T >= kappa.
Hypothesis decide(double statistic, double kappa);

/// Corrected uses the zero-mean H0 statistic; AsPrinted adds 2|mu1|^2 to the
/// numerator and is kept for side-by-side comparison only.
enum class PfaForm { Corrected, AsPrinted };

/// Q(kappa / (|mu1| sqrt(2 sigma2))). Throws std::domain_error when mu1 = 0.
double pfa_analytic(const DetectionStatisticParams &params, PfaForm form = PfaForm::Corrected);

/// Q((kappa - 2|mu1|^2) / (|mu1| sqrt(2 sigma2))). Throws std::domain_error when mu1 = 0.
double pd_analytic(const DetectionStatisticParams &params);

/// 1 - P_D evaluated as an upper tail, exact where P_D rounds to 1.
double miss_analytic(const DetectionStatisticParams &params);

struct EmpiricalRate {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double rate = 0.0;
    ConfidenceInterval ci;
};

struct DetectionOperatingPoint {
    double kappa = 0.0;
    double pfa_analytic = 0.0;
    double pd_analytic = 0.0;
    EmpiricalRate pfa_mc;
    EmpiricalRate pd_mc;
    std::uint64_t trials = 0;
};

struct MonteCarloOptions {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency
    double ci_level = 0.95;
    ClutterStatistics clutter = ClutterStatistics::Gaussian;
};

/// Sampled statistic under both hypotheses. Trial t under H0 uses stream
/// (seed, 2t) and under H1 stream (seed, 2t + 1), so samples do not depend
/// on the thread schedule.
struct DetectionSamples {
    std::vector<double> h0;
    std::vector<double> h1;
};

DetectionSamples sample_detection_statistics(const RadarGeometry &geometry, cdouble alpha0, const cvec &w,
                                             const cvec &x, const MonteCarloOptions &options);

/// Monte Carlo and closed-form operating point at one threshold.
DetectionOperatingPoint simulate_detection(const RadarGeometry &geometry, cdouble alpha0, const cvec &w,
                                           const cvec &x, double kappa, const MonteCarloOptions &options);

/// One operating point per threshold, sharing a single set of samples.
std::vector<DetectionOperatingPoint> roc_sweep(const RadarGeometry &geometry, cdouble alpha0, const cvec &w,
                                               const cvec &x, const std::vector<double> &kappa_grid,
                                               const MonteCarloOptions &options);

/// Operating points from precomputed samples (samples are sorted in place).
std::vector<DetectionOperatingPoint> operating_points(DetectionSamples &samples,
                                                      const DetectionStatisticParams &params,
                                                      const std::vector<double> &kappa_grid, double ci_level);

} // namespace nfjrc
