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

#include "nfjrc/power_allocation.hpp"

#include <cmath>
#include <stdexcept>

namespace nfjrc {

BeamformerSet split_beams(const LinkScenario &scenario, double power_norm, double rho)
{
    BeamformerSet beams;
    beams.comm_beams.push_back(std::sqrt((1.0 - rho) * power_norm) * scenario.comm_direction);
    beams.radar_beam = std::sqrt(rho * power_norm) * scenario.radar_direction;
    return beams;
}

void ConstraintTargets::validate() const
{
    if (!(gamma_min >= 0.0))
        throw std::invalid_argument("ConstraintTargets: gamma_min must be >= 0");
    if (!(pfa_max >= 0.0 && pfa_max <= 1.0))
        throw std::invalid_argument("ConstraintTargets: pfa_max must lie in [0, 1]");
    if (!(pd_min >= 0.0 && pd_min <= 1.0))
        throw std::invalid_argument("ConstraintTargets: pd_min must lie in [0, 1]");
    if (!(p_max_w > 0.0))
        throw std::invalid_argument("ConstraintTargets: p_max must be positive");
}

namespace {

/// kappa-independent state at one (P, rho).
struct SplitState {
    double power_w = 0.0;
    double rho = 0.0;
    double sinr_d = 0.0;
    double sinr_r = 0.0;
    double scnr = 0.0;
    double total_power_w = 0.0;
    bool degenerate = true;
    DetectionStatisticParams params{};
};

SplitState prepare_split(const LinkScenario &s, double power_w, double rho)
{
    if (!(power_w >= 0.0))
        throw std::invalid_argument("evaluate_point: power must be >= 0");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("evaluate_point: rho must lie in [0, 1]");

    SplitState st;
    st.power_w = power_w;
    st.rho = rho;
    const BeamformerSet beams = split_beams(s, s.normalise(power_w), rho);
    st.total_power_w = beams.total_power() * s.noise_power_w;

    const auto &ch = s.channels;
    st.sinr_d = sinr_direct(ch.h_sd, beams, ch.noise_var_dest);
    const RelayGain gain = af_gain(ch.h_sr, beams, ch.noise_var_relay, s.relay_power_budget);
    st.sinr_r = sinr_relayed(ch.h_rd, gain, ch.h_sr, beams, ch.noise_var_relay, ch.noise_var_dest, 0, s.relay_mode);

    const cvec x = transmit_signal(beams, s.pilots);
    const cvec target_response = s.radar.target.apply(x);
    if (!(target_response.squaredNorm() > 0.0) || std::abs(s.alpha0) == 0.0)
        return st;

    const cmat rx = transmit_covariance(beams);
    const ClutterCovariance cov = clutter_covariance(s.radar, rx);
    cvec w = optimal_receive_beamformer(s.alpha0, s.radar.target, cov, x);
    w /= w.norm();
    st.params = statistic_params(w, s.alpha0, s.radar, x, s.eta);
    st.degenerate = !(std::abs(st.params.mu1) > 0.0);
    st.scnr = average_scnr(beams, s.alpha0, s.radar);
    return st;
}

PointMetrics metrics_at(const SplitState &st, const ConstraintTargets &t, double kappa)
{
    PointMetrics m;
    m.power_w = st.power_w;
    m.rho = st.rho;
    m.kappa = kappa;
    m.sinr_direct = st.sinr_d;
    m.sinr_relayed = st.sinr_r;
    m.rate = mrc_rate(st.sinr_d, st.sinr_r);
    m.scnr = st.scnr;
    m.degenerate = st.degenerate;
    if (st.degenerate) {
        // T is identically zero: it exceeds kappa under both hypotheses or neither.
        m.pd = m.pfa = kappa <= 0.0 ? 1.0 : 0.0;
        m.miss = 1.0 - m.pd;
    } else {
        const auto p = st.params.with_kappa(kappa);
        m.mu1_abs = std::abs(p.mu1);
        m.sigma2 = p.sigma2;
        m.pfa = pfa_analytic(p);
        m.pd = pd_analytic(p);
        m.miss = miss_analytic(p);
    }
    m.c1_rate = rate_constraint_satisfied(st.sinr_d, st.sinr_r, t.gamma_min);
    // Q stays strictly inside (0, 1), so the closed-form ends are unattainable
    // even where the tails underflow
    m.c2_pfa = t.pfa_max > 0.0 && m.pfa <= t.pfa_max;
    m.c3_pd = t.pd_min < 1.0 && m.miss <= 1.0 - t.pd_min;
    m.c4_power = st.total_power_w <= st.power_w * (1.0 + 1e-9) && st.power_w <= t.p_max_w * (1.0 + 1e-9);
    return m;
}

double kappa_scale(const SplitState &st)
{
    if (st.degenerate)
        return 1.0;
    return st.params.sigma2 + std::norm(st.params.mu1);
}

} // namespace

PointMetrics evaluate_point(const LinkScenario &scenario, const ConstraintTargets &targets, double power_w,
                            double rho, double kappa)
{
    return metrics_at(prepare_split(scenario, power_w, rho), targets, kappa);
}

void SearchGrid::validate(const ConstraintTargets &targets) const
{
    if (power_points < 2 || rho_points < 1 || kappa_points < 2)
        throw std::invalid_argument("SearchGrid: need >= 2 power points, >= 1 rho point and >= 2 kappa points");
    if (!(p_min_w > 0.0) || !(p_min_w < targets.p_max_w))
        throw std::invalid_argument("SearchGrid: p_min must lie in (0, p_max)");
    if (!(kappa_span > 0.0))
        throw std::invalid_argument("SearchGrid: kappa_span must be positive");
    if (tol_w < 0.0)
        throw std::invalid_argument("SearchGrid: tolerance must be positive");
    if (fixed_rho && !(*fixed_rho >= 0.0 && *fixed_rho <= 1.0))
        throw std::invalid_argument("SearchGrid: fixed rho must lie in [0, 1]");
}

std::vector<double> SearchGrid::power_grid(double p_max_w) const
{
    std::vector<double> grid(static_cast<std::size_t>(power_points));
    const double lo = std::log10(p_min_w);
    const double hi = std::log10(p_max_w);
    for (int i = 0; i < power_points; ++i)
        grid[static_cast<std::size_t>(i)] = std::pow(10.0, lo + (hi - lo) * i / (power_points - 1));
    grid.back() = p_max_w;
    return grid;
}

std::vector<double> SearchGrid::rho_grid() const
{
    if (fixed_rho)
        return {*fixed_rho};
    if (rho_points == 1)
        return {0.5};
    std::vector<double> grid(static_cast<std::size_t>(rho_points));
    for (int i = 0; i < rho_points; ++i)
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (rho_points - 1);
    return grid;
}

SplitEvaluation evaluate_split(const LinkScenario &scenario, const ConstraintTargets &targets,
                               const SearchGrid &grid, double power_w, double rho)
{
    const SplitState st = prepare_split(scenario, power_w, rho);
    const double scale = kappa_scale(st);
    SplitEvaluation out;
    // P_FA and P_D both fall with kappa: the smallest admissible kappa has the largest P_D.
    for (int i = 0; i < grid.kappa_points; ++i) {
        const double frac = -1.0 + 2.0 * i / (grid.kappa_points - 1);
        const double kappa = grid.kappa_span * frac * scale;
        PointMetrics m = metrics_at(st, targets, kappa);
        ++out.kappa_evaluations;
        out.metrics = m;
        if (m.c2_pfa) {
            out.admissible = true;
            break;
        }
    }
    if (grid.np_threshold && !st.degenerate && targets.pfa_max > 0.0 && targets.pfa_max < 1.0) {
        const double np = inverse_q(targets.pfa_max) * std::abs(st.params.mu1) * std::sqrt(2.0 * st.params.sigma2);
        const double kappa = np + 1e-9 * std::abs(np);  // nudge so rounding keeps P_FA under the ceiling
        PointMetrics m = metrics_at(st, targets, kappa);
        ++out.kappa_evaluations;
        if (m.c2_pfa && (!out.admissible || kappa < out.metrics.kappa)) {
            out.metrics = m;
            out.admissible = true;
        }
    }
    return out;
}

InnerOptimum optimize_inner(const LinkScenario &scenario, const ConstraintTargets &targets, const SearchGrid &grid,
                            double power_w)
{
    InnerOptimum inner;
    for (double rho : grid.rho_grid()) {
        SplitEvaluation ev = evaluate_split(scenario, targets, grid, power_w, rho);
        inner.evaluations += ev.kappa_evaluations;
        if (!inner.feasible && ev.metrics.feasible()) {
            inner.feasible = true;
            inner.certificate = ev.metrics;
        }
        inner.splits.push_back(std::move(ev));
    }
    return inner;
}

OptimizationResult minimize_power(const LinkScenario &scenario, const ConstraintTargets &targets,
                                  const SearchGrid &grid)
{
    targets.validate();
    grid.validate(targets);

    OptimizationResult result;
    result.tolerance_w = grid.tolerance(targets);

    const auto powers = grid.power_grid(targets.p_max_w);
    std::optional<std::size_t> first;
    InnerOptimum best;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        InnerOptimum inner = optimize_inner(scenario, targets, grid, powers[i]);
        result.grid_evaluations += inner.evaluations;
        if (inner.feasible) {
            first = i;
            best = std::move(inner);
            break;
        }
    }
    if (!first)
        return result;

    double hi = powers[*first];
    double lo = *first == 0 ? hi : powers[*first - 1];
    result.bracket_lo_w = lo;
    result.bracket_hi_w = hi;

    while (*first > 0 && hi - lo > result.tolerance_w &&
           result.bisection_steps < static_cast<std::size_t>(grid.max_bisections)) {
        const double mid = 0.5 * (lo + hi);
        InnerOptimum inner = optimize_inner(scenario, targets, grid, mid);
        result.grid_evaluations += inner.evaluations;
        ++result.bisection_steps;
        if (inner.feasible) {
            hi = mid;
            best = std::move(inner);
        } else {
            lo = mid;
        }
    }

    result.feasible = true;
    result.p_star_w = hi;
    result.achieved = best.certificate;
    result.rho = best.certificate.rho;
    result.kappa_star = best.certificate.kappa;
    return result;
}

TradeoffResult tradeoff_sweep(const LinkScenario &scenario, const ConstraintTargets &targets,
                              const std::vector<double> &power_grid_w, const SearchGrid &grid)
{
    if (power_grid_w.empty())
        throw std::invalid_argument("tradeoff_sweep: power grid must be non-empty");
    targets.validate();

    TradeoffResult out;
    out.levels.reserve(power_grid_w.size());
    for (double p : power_grid_w) {
        TradeoffLevel level;
        level.power_w = p;
        level.inner = optimize_inner(scenario, targets, grid, p);
        level.feasible = level.inner.feasible;
        for (const auto &split : level.inner.splits) {
            level.best_rate = std::max(level.best_rate, split.metrics.rate);
            if (split.admissible && !split.metrics.degenerate)
                level.best_pd = std::max(level.best_pd, split.metrics.pd);
        }
        if (level.feasible && !out.marked)
            out.marked = out.levels.size();
        out.levels.push_back(std::move(level));
    }
    return out;
}

} // namespace nfjrc
