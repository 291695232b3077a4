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

#include "nfjrc/power_allocation.hpp"
#include "nfjrc/scenario_config.hpp"
#include "power_oracle.hpp"

using namespace nfjrc;

namespace {

const LinkScenario &default_scenario()
{
    static const LinkScenario s = build_link_scenario(ScenarioConfig{});
    return s;
}

ConstraintTargets default_targets() { return ScenarioConfig{}.constraint_targets(); }

SearchGrid default_grid() { return ScenarioConfig{}.optimizer.search_grid(); }

} // namespace

TEST_CASE("split beams carry the requested power")
{
    const auto &s = default_scenario();
    for (double rho : {0.0, 0.3, 1.0}) {
        const auto b = split_beams(s, 7.0, rho);
        CHECK(b.radar_beam.squaredNorm() == doctest::Approx(7.0 * rho).epsilon(1e-12));
        CHECK(b.comm_beams[0].squaredNorm() == doctest::Approx(7.0 * (1 - rho)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate_point")
{
    const auto &s = default_scenario();
    const auto t = default_targets();
    const auto zero = evaluate_point(s, t, 0.0, 0.5, 1.0);
    CHECK(zero.rate == 0.0);
    CHECK(zero.degenerate);
    CHECK(zero.pd == zero.pfa);
    CHECK_FALSE(zero.feasible());

    for (double p : {1e-3, 0.5, 20.0, 100.0})
        for (double rho : {0.0, 0.5, 1.0}) {
            const auto m = evaluate_point(s, t, p, rho, 3.0);
            CHECK(m.c4_power);
            CHECK(m.pd >= m.pfa);
        }

    // more power at a fixed split never lowers the rate or the best admissible P_D
    const auto g = default_grid();
    double prev_rate = 0, prev_pd = 0;
    for (double p = 1e-2; p <= 100; p *= 1.5) {
        const auto ev = evaluate_split(s, t, g, p, 0.45);
        CHECK(ev.metrics.rate >= prev_rate);
        CHECK(ev.metrics.pd >= prev_pd - 1e-12);
        prev_rate = ev.metrics.rate;
        prev_pd = ev.metrics.pd;
    }
    CHECK_THROWS_AS(evaluate_point(s, t, -1.0, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_point(s, t, 1.0, 1.5, 0.0), std::invalid_argument);
}

TEST_CASE("minimize_power on the default scenario")
{
    const auto &s = default_scenario();
    const auto t = default_targets();
    const auto g = default_grid();
    const auto r = minimize_power(s, t, g);
    REQUIRE(r.feasible);

    const auto check = evaluate_point(s, t, r.p_star_w, r.rho, r.kappa_star);
    CHECK(check.feasible());
    CHECK(check.rate >= 5.0);
    CHECK(check.pd >= 0.6);
    CHECK(check.pfa <= 1e-6);

    const double tol = g.tolerance(t);
    CHECK(r.bracket_lo_w < r.p_star_w);
    CHECK(r.p_star_w <= r.bracket_hi_w);
    const double below = r.p_star_w * (1 - 10 * tol / r.p_star_w);
    CHECK_FALSE(optimize_inner(s, t, g, below).feasible);

    const auto bf = oracle::brute_force_min_power(s, t, g.p_min_w, 256, g.rho_points, 4001);
    REQUIRE(bf.p_star_w);
    const double coarse_step = std::pow(t.p_max_w / g.p_min_w, 1.0 / (g.power_points - 1));
    CHECK(std::abs(std::log(*bf.p_star_w / r.p_star_w)) <= std::log(coarse_step));
}

TEST_CASE("degenerate and infeasible targets")
{
    const auto &s = default_scenario();
    const auto g = default_grid();

    ConstraintTargets vacuous{0.0, 1.0, 0.0, 100.0};
    const auto r = minimize_power(s, vacuous, g);
    REQUIRE(r.feasible);
    CHECK(r.p_star_w == doctest::Approx(g.p_min_w).epsilon(1e-12));

    auto certain = default_targets();
    certain.pd_min = 1.0;
    CHECK_FALSE(minimize_power(s, certain, g).feasible);

    auto tiny = default_targets();
    tiny.p_max_w = 2e-3;
    CHECK_FALSE(minimize_power(s, tiny, g).feasible);
    const auto sweep = tradeoff_sweep(s, tiny, {1e-3, 2e-3}, g);
    CHECK_FALSE(sweep.marked);

    auto bad = default_targets();
    bad.pfa_max = 2.0;
    CHECK_THROWS_AS(minimize_power(s, bad, g), std::invalid_argument);
}

TEST_CASE("tradeoff sweep")
{
    const auto &s = default_scenario();
    const auto t = default_targets();
    const auto g = default_grid();
    std::vector<double> powers;
    for (double dbm = 30; dbm <= 50; dbm += 1)
        powers.push_back(dbm_to_watts(dbm));
    const auto sweep = tradeoff_sweep(s, t, powers, g);
    REQUIRE(sweep.levels.size() == powers.size());
    REQUIRE(sweep.marked);

    // the feasible set is an up-set of power
    bool seen = false;
    for (const auto &lv : sweep.levels) {
        if (seen)
            CHECK(lv.feasible);
        seen |= lv.feasible;
    }
    const auto &mark = sweep.levels[*sweep.marked];
    CHECK(mark.feasible);
    CHECK(mark.inner.certificate.rate >= 5.0);
    CHECK(mark.inner.certificate.pd >= 0.6);
    if (*sweep.marked > 0)
        CHECK_FALSE(sweep.levels[*sweep.marked - 1].feasible);

    const auto r = minimize_power(s, t, g);
    CHECK(mark.power_w >= r.p_star_w);
    CHECK(mark.power_w <= dbm_to_watts(watts_to_dbm(r.p_star_w) + 1.0) * (1 + 1e-12));
}

TEST_CASE("fixed split")
{
    const auto &s = default_scenario();
    const auto t = default_targets();
    auto g = default_grid();
    g.fixed_rho = 0.5;
    const auto r = minimize_power(s, t, g);
    REQUIRE(r.feasible);
    CHECK(r.rho == 0.5);
    CHECK(r.p_star_w >= minimize_power(s, t, default_grid()).p_star_w * (1 - 1e-3));
}
