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

#include "nfjrc/detection.hpp"

using namespace nfjrc;

namespace {

cvec random_vec(RandomStream &rng, Eigen::Index n, double var = 1.0)
{
    cvec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = rng.complex_gaussian(var);
    return v;
}

struct Setup {
    ArrayConfig cfg;
    Scene scene;
    RadarGeometry geo;
    cvec w;
    cvec x;
};

Setup make_setup(std::uint64_t seed, int n, int clutter, double sigma, double gain)
{
    auto rng = derive_stream(seed, 0);
    ArrayConfig cfg(n, 28e9);
    Scene scene{Target{PolarPosition(5.0, 1.0), cdouble(0.6, 0.3) * gain}, {}};
    scene.clutter = make_clutter_scene(rng, clutter, 5.0, sigma, 0.05, 1.0);
    auto geo = RadarGeometry::from_scene(cfg, scene);
    cvec x = random_vec(rng, n);
    cvec w = random_vec(rng, n);
    w.normalize();
    return {cfg, scene, geo, w, x};
}

} // namespace

TEST_CASE("statistic parameters")
{
    const auto s = make_setup(1, 5, 3, 0.8, 1.0);
    const auto p = statistic_params(s.cfg, s.w, s.scene, s.x, 1e-6);
    const cmat A = s.geo.target.matrix();
    CHECK(std::abs(p.mu1 - s.scene.target.reflectivity * (s.w.adjoint() * A * s.x).value()) < 1e-12);
    double sigma2 = s.w.squaredNorm();
    for (const auto &c : s.scene.clutter) {
        const cvec a = steering_vector(s.cfg, c.position);
        sigma2 += c.amplitude_scale * c.amplitude_scale * std::norm((s.w.adjoint() * a * a.transpose() * s.x).value());
    }
    CHECK(p.sigma2 == doctest::Approx(sigma2).epsilon(1e-12));
    CHECK(p.kappa == doctest::Approx(sigma2 * std::log(1e-6) + std::norm(p.mu1)).epsilon(1e-12));
    CHECK_THROWS_AS(statistic_params(cvec::Zero(5), 1.0, s.geo, s.x, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(statistic_params(s.w, 1.0, s.geo, s.x, 0.0), std::invalid_argument);
}

TEST_CASE("decision rule and closed forms")
{
    CHECK(decide(2.0, 2.0) == Hypothesis::H1);
    CHECK(decide(1.999, 2.0) == Hypothesis::H0);
    CHECK(test_statistic(cdouble(1, 2), DetectionStatisticParams{cdouble(3, -1), 1.0}) == doctest::Approx(2.0 * 1.0));

    DetectionStatisticParams p{cdouble(0.8, 0.6), 2.0};
    const double scale = std::sqrt(4.0);
    for (double k = -20; k <= 20; k += 0.5) {
        const auto q = p.with_kappa(k);
        CHECK(pfa_analytic(q) == doctest::Approx(q_function(k / scale)).epsilon(1e-14));
        CHECK(pfa_analytic(q, PfaForm::AsPrinted) == doctest::Approx(q_function((k + 2.0) / scale)).epsilon(1e-14));
        CHECK(pd_analytic(q) == doctest::Approx(q_function((k - 2.0) / scale)).epsilon(1e-14));
        CHECK(std::abs(pd_analytic(q) + miss_analytic(q) - 1.0) < 1e-14);
        CHECK(pd_analytic(q) >= pfa_analytic(q));
    }
    CHECK(pd_analytic(p.with_kappa(-1e6)) == 1.0);
    CHECK(pfa_analytic(p.with_kappa(-1e6)) == 1.0);
    CHECK(pd_analytic(p.with_kappa(1e6)) == 0.0);
    CHECK(pfa_analytic(p.with_kappa(1e6)) == 0.0);
    CHECK_THROWS_AS(pd_analytic(DetectionStatisticParams{0.0, 1.0}), std::domain_error);
}

TEST_CASE("closed forms agree with an independent snapshot simulation")
{
    // simulate full snapshots with dense matrices, form T and threshold it
    const auto s = make_setup(2, 5, 3, 0.8, 2.0);
    const auto p = statistic_params(s.cfg, s.w, s.scene, s.x, 1e-6);
    const cmat A = s.geo.target.matrix();
    std::vector<cmat> Al;
    for (const auto &c : s.scene.clutter) {
        const cvec a = steering_vector(s.cfg, c.position);
        Al.push_back(a * a.transpose());
    }
    auto rng = derive_stream(77, 5);
    const int trials = 40000;
    const double scale = std::abs(p.mu1) * std::sqrt(2 * p.sigma2);
    for (double z : {-1.0, 0.0, 0.7, 1.5}) {
        const double kappa = z * scale + (z > 0 ? 0.0 : 2 * std::norm(p.mu1));
        int h0 = 0, h1 = 0;
        for (int t = 0; t < trials; ++t) {
            for (int hyp = 0; hyp < 2; ++hyp) {
                cvec y = random_vec(rng, 5);
                if (hyp)
                    y += s.scene.target.reflectivity * A * s.x;
                for (std::size_t l = 0; l < Al.size(); ++l)
                    y += rng.complex_gaussian(0.64) * Al[l] * s.x;
                const double T = 2.0 * std::real(s.w.dot(y) * std::conj(p.mu1));
                (hyp ? h1 : h0) += T >= kappa;
            }
        }
        const auto q = p.with_kappa(kappa);
        const double pfa = pfa_analytic(q), pd = pd_analytic(q);
        CHECK(std::abs(double(h0) / trials - pfa) < 4 * std::sqrt(pfa * (1 - pfa) / trials) + 1e-9);
        CHECK(std::abs(double(h1) / trials - pd) < 4 * std::sqrt(pd * (1 - pd) / trials) + 1e-9);
    }
}

TEST_CASE("library Monte Carlo within the binomial interval")
{
    const auto s = make_setup(3, 10, 3, 0.1, 1.0);
    const auto p = statistic_params(s.w, s.scene.target.reflectivity, s.geo, s.x, 1e-6);
    const double scale = std::abs(p.mu1) * std::sqrt(2 * p.sigma2);
    std::vector<double> grid;
    for (double z = -3; z <= 5; z += 0.5)
        grid.push_back(z * scale);
    MonteCarloOptions mc;
    mc.trials = 100000;
    mc.seed = 5;
    const auto pts = roc_sweep(s.geo, s.scene.target.reflectivity, s.w, s.x, grid, mc);
    REQUIRE(pts.size() == grid.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto &op = pts[i];
        const double n = double(op.trials);
        CHECK(std::abs(op.pfa_mc.rate - op.pfa_analytic) <
              4 * std::sqrt(op.pfa_analytic * (1 - op.pfa_analytic) / n) + 1.0 / n);
        CHECK(std::abs(op.pd_mc.rate - op.pd_analytic) <
              4 * std::sqrt(op.pd_analytic * (1 - op.pd_analytic) / n) + 1.0 / n);
        CHECK(op.pfa_mc.ci.contains(op.pfa_mc.rate));
        CHECK(op.pd_mc.rate >= op.pfa_mc.rate - 0.01);
        if (i) {
            CHECK(op.pfa_mc.rate <= pts[i - 1].pfa_mc.rate);
            CHECK(op.pd_mc.rate <= pts[i - 1].pd_mc.rate);
            CHECK(op.pd_analytic <= pts[i - 1].pd_analytic);
        }
    }
    // simulate_detection at one threshold equals the sweep entry
    const auto one = simulate_detection(s.geo, s.scene.target.reflectivity, s.w, s.x, grid[4], mc);
    CHECK(one.pfa_mc.hits == pts[4].pfa_mc.hits);
    CHECK(one.pd_mc.hits == pts[4].pd_mc.hits);
}

TEST_CASE("Monte Carlo does not depend on the thread count")
{
    const auto s = make_setup(4, 5, 3, 0.8, 1.0);
    MonteCarloOptions mc;
    mc.trials = 20001;
    mc.seed = 9;
    mc.threads = 1;
    const auto a = sample_detection_statistics(s.geo, s.scene.target.reflectivity, s.w, s.x, mc);
    mc.threads = 4;
    const auto b = sample_detection_statistics(s.geo, s.scene.target.reflectivity, s.w, s.x, mc);
    CHECK(a.h0 == b.h0);
    CHECK(a.h1 == b.h1);
    mc.seed = 10;
    const auto c = sample_detection_statistics(s.geo, s.scene.target.reflectivity, s.w, s.x, mc);
    CHECK(a.h0 != c.h0);
}

TEST_CASE("fixed-envelope clutter")
{
    const auto s = make_setup(5, 5, 2, 0.8, 1.0);
    MonteCarloOptions mc;
    mc.trials = 5000;
    mc.clutter = ClutterStatistics::FixedEnvelope;
    const auto pts = roc_sweep(s.geo, s.scene.target.reflectivity, s.w, s.x, {-1e9, 1e9}, mc);
    CHECK(pts[0].pfa_mc.rate == 1.0);
    CHECK(pts[0].pd_mc.rate == 1.0);
    CHECK(pts[1].pfa_mc.rate == 0.0);
    CHECK(pts[1].pd_mc.rate == 0.0);
}
