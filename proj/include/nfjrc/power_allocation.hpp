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
#include <optional>
#include <vector>

#include "nfjrc/array_geometry.hpp"
#include "nfjrc/comm_link.hpp"
#include "nfjrc/detection.hpp"
#include "nfjrc/propagation.hpp"
#include "nfjrc/radar_sensing.hpp"

namespace nfjrc {

/// Fully resolved link: geometry, channels and fixed beam directions.
///
/// All powers inside are normalised to the radar receiver noise power
/// (noise_power_w), so the radar noise covariance is the identity. Transmit
/// powers handed to the optimiser are in watts and converted on entry.
struct LinkScenario {
    ArrayConfig array;
    ChannelSet channels;
    double relay_power_budget = 1.0;
    RelayInterference relay_mode = RelayInterference::AsPrinted;

    RadarGeometry radar;
    cdouble alpha0;

    cvec comm_direction;   // unit-norm MRT toward the destination
    cvec radar_direction;  // unit-norm conj(a_target) / sqrt(N)

    /// Known pilot symbols (s_1, s_0) forming the detection snapshot x.
    std::vector<cdouble> pilots{cdouble(1.0, 0.0), cdouble(1.0, 0.0)};

    double noise_power_w = 1.0;
    double eta = 1e-6;

    double normalise(double power_w) const { return power_w / noise_power_w; }
};

/// u = sqrt((1 - rho) P) u_hat, v = sqrt(rho P) v_hat with P already normalised.
BeamformerSet split_beams(const LinkScenario &scenario, double power_norm, double rho);

struct ConstraintTargets {
    double gamma_min = 31.0;  // linear SINR sum
    double pfa_max = 1e-6;
    double pd_min = 0.6;
    double p_max_w = 100.0;

    void validate() const;
};

/// Metrics at one (P, rho, kappa) and the four constraint checks.
struct PointMetrics {
    double power_w = 0.0;
    double rho = 0.0;
    double kappa = 0.0;

    double sinr_direct = 0.0;
    double sinr_relayed = 0.0;
    double rate = 0.0;
    double pd = 0.0;
    double pfa = 0.0;
    double miss = 1.0;  // 1 - pd without cancellation
    double scnr = 0.0;  // average SCNR, linear

    double mu1_abs = 0.0;
    double sigma2 = 0.0;
    /// mu1 = 0: the statistic is identically zero and cannot detect anything.
    bool degenerate = false;

    bool c1_rate = false;
    bool c2_pfa = false;
    bool c3_pd = false;
    bool c4_power = false;

    bool feasible() const { return !degenerate && c1_rate && c2_pfa && c3_pd && c4_power; }
};

PointMetrics evaluate_point(const LinkScenario &scenario, const ConstraintTargets &targets, double power_w,
                            double rho, double kappa);

/// Search resolution. Power points are log-spaced on [p_min_w, p_max_w]; the
/// kappa grid at each probe is linspace(-span, span) * (sigma2 + |mu1|^2).
struct SearchGrid {
    double p_min_w = 1e-3;
    int power_points = 64;
    int rho_points = 21;
    int kappa_points = 101;
    double kappa_span = 10.0;
    double tol_w = 0.0;  // 0: 1e-3 * p_max_w
    std::optional<double> fixed_rho;
    int max_bisections = 200;
    /// Also try the exact Neyman-Pearson threshold Q^-1(pfa_max) |mu1| sqrt(2 sigma2),
    /// so the kappa step size does not limit the search.
    bool np_threshold = true;

    void validate(const ConstraintTargets &targets) const;
    std::vector<double> power_grid(double p_max_w) const;
    std::vector<double> rho_grid() const;
    double tolerance(const ConstraintTargets &targets) const { return tol_w > 0.0 ? tol_w : 1e-3 * targets.p_max_w; }
};

/// Best kappa for a fixed (P, rho): the smallest candidate kappa meeting the
/// false-alarm ceiling, which maximises P_D among admissible thresholds.
struct SplitEvaluation {
    PointMetrics metrics;
    bool admissible = false;  // some grid kappa meets the P_FA ceiling
    std::size_t kappa_evaluations = 0;
};

SplitEvaluation evaluate_split(const LinkScenario &scenario, const ConstraintTargets &targets,
                               const SearchGrid &grid, double power_w, double rho);

/// Inner search over (rho, kappa) at fixed power. The certificate is the
/// first feasible point in (smallest rho, smallest kappa) order.
struct InnerOptimum {
    bool feasible = false;
    PointMetrics certificate;
    std::vector<SplitEvaluation> splits;
    std::size_t evaluations = 0;
};

InnerOptimum optimize_inner(const LinkScenario &scenario, const ConstraintTargets &targets, const SearchGrid &grid,
                            double power_w);

struct OptimizationResult {
    bool feasible = false;
    double p_star_w = 0.0;
    double rho = 0.0;
    double kappa_star = 0.0;
    PointMetrics achieved;
    std::size_t grid_evaluations = 0;
    std::size_t bisection_steps = 0;
    double tolerance_w = 0.0;
    /// Coarse grid neighbours bracketing p_star (equal when p_star is the grid floor).
    double bracket_lo_w = 0.0;
    double bracket_hi_w = 0.0;
};

/// Minimise total transmit power subject to rate, false-alarm, detection and
/// power-budget constraints: coarse power grid, then bisection.
OptimizationResult minimize_power(const LinkScenario &scenario, const ConstraintTargets &targets,
                                  const SearchGrid &grid);

struct TradeoffLevel {
    double power_w = 0.0;
    double best_rate = 0.0;  // max over rho
    double best_pd = 0.0;    // max over (rho, kappa) subject to P_FA <= pfa_max
    bool feasible = false;
    InnerOptimum inner;
};

struct TradeoffResult {
    std::vector<TradeoffLevel> levels;
    std::optional<std::size_t> marked;  // minimal jointly-feasible level
};

TradeoffResult tradeoff_sweep(const LinkScenario &scenario, const ConstraintTargets &targets,
                              const std::vector<double> &power_grid_w, const SearchGrid &grid);

} // namespace nfjrc
