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

#include "nfjrc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nfjrc/parallel.hpp"

namespace nfjrc {

DetectionStatisticParams statistic_params(const cvec &w, cdouble alpha0, const RadarGeometry &geometry,
                                          const cvec &x, double eta)
{
    if (w.size() != geometry.size() || !(w.squaredNorm() > 0.0))
        throw std::invalid_argument("statistic_params: receive beamformer must be non-zero with length N");
    if (!(eta > 0.0))
        throw std::invalid_argument("statistic_params: eta must be positive");

    DetectionStatisticParams p;
    p.mu1 = alpha0 * w.dot(geometry.target.apply(x));
    p.sigma2 = w.squaredNorm();
    for (std::size_t l = 0; l < geometry.clutter.size(); ++l) {
        const double s = geometry.clutter_scale[l];
        p.sigma2 += s * s * std::norm(w.dot(geometry.clutter[l].apply(x)));
    }
    p.eta = eta;
    p.kappa = p.sigma2 * std::log(eta) + std::norm(p.mu1);
    return p;
}

DetectionStatisticParams statistic_params(const ArrayConfig &cfg, const cvec &w, const Scene &scene, const cvec &x,
                                          double eta)
{
    return statistic_params(w, scene.target.reflectivity, RadarGeometry::from_scene(cfg, scene), x, eta);
}

double test_statistic(cdouble y, const DetectionStatisticParams &params)
{
    return 2.0 * std::real(y * std::conj(params.mu1));
}

Hypothesis decide(double statistic, double kappa) { return statistic >= kappa ? Hypothesis::H1 : Hypothesis::H0; }

namespace {

double statistic_scale(const DetectionStatisticParams &p)
{
    const double mu = std::abs(p.mu1);
    if (!(mu > 0.0))
        throw std::domain_error("detection: |mu1| = 0, the test statistic is degenerate");
    if (!(p.sigma2 > 0.0))
        throw std::domain_error("detection: sigma2 must be positive");
    return mu * std::sqrt(2.0 * p.sigma2);
}

} // namespace

double pfa_analytic(const DetectionStatisticParams &params, PfaForm form)
{
    const double scale = statistic_scale(params);
    double numerator = params.kappa;
    if (form == PfaForm::AsPrinted)
        numerator += 2.0 * std::norm(params.mu1);
    return q_function(numerator / scale);
}

double pd_analytic(const DetectionStatisticParams &params)
{
    const double scale = statistic_scale(params);
    return q_function((params.kappa - 2.0 * std::norm(params.mu1)) / scale);
}

double miss_analytic(const DetectionStatisticParams &params)
{
    const double scale = statistic_scale(params);
    return q_function((2.0 * std::norm(params.mu1) - params.kappa) / scale);
}

DetectionSamples sample_detection_statistics(const RadarGeometry &geometry, cdouble alpha0, const cvec &w,
                                             const cvec &x, const MonteCarloOptions &options)
{
    if (options.trials < 1)
        throw std::invalid_argument("simulate_detection: trials must be >= 1");
    if (w.size() != geometry.size() || x.size() != geometry.size())
        throw std::invalid_argument("simulate_detection: w and x must have length N");

    const cdouble target_gain = w.dot(geometry.target.apply(x));
    const cdouble mu1 = alpha0 * target_gain;
    const std::size_t n_clutter = geometry.clutter.size();
    std::vector<cdouble> clutter_gain(n_clutter);
    for (std::size_t l = 0; l < n_clutter; ++l)
        clutter_gain[l] = w.dot(geometry.clutter[l].apply(x));

    const auto trials = static_cast<std::size_t>(options.trials);
    DetectionSamples out;
    out.h0.resize(trials);
    out.h1.resize(trials);

    // y_s = w^H s with s drawn per trial; the target term is present under H1 only.
    auto one_trial = [&](RandomStream &rng, bool target_present) {
        cdouble y = target_present ? alpha0 * target_gain : cdouble{};
        for (std::size_t l = 0; l < n_clutter; ++l) {
            const double s = geometry.clutter_scale[l];
            const cdouble alpha = options.clutter == ClutterStatistics::Gaussian ? rng.complex_gaussian(s * s)
                                                                                 : s * rng.unit_phasor();
            y += alpha * clutter_gain[l];
        }
        for (Eigen::Index i = 0; i < w.size(); ++i)
            y += std::conj(w(i)) * rng.complex_gaussian(1.0);
        return 2.0 * std::real(y * std::conj(mu1));
    };

    parallel_for(trials, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            RandomStream rng0 = derive_stream(options.seed, 2 * static_cast<std::uint64_t>(t));
            RandomStream rng1 = derive_stream(options.seed, 2 * static_cast<std::uint64_t>(t) + 1);
            out.h0[t] = one_trial(rng0, false);
            out.h1[t] = one_trial(rng1, true);
        }
    });
    return out;
}

namespace {

EmpiricalRate rate_from_sorted(const std::vector<double> &sorted, double kappa, double ci_level)
{
    EmpiricalRate r;
    r.trials = sorted.size();
    const auto first_h1 = std::lower_bound(sorted.begin(), sorted.end(), kappa);  // T >= kappa
    r.hits = static_cast<std::uint64_t>(sorted.end() - first_h1);
    r.rate = static_cast<double>(r.hits) / static_cast<double>(r.trials);
    r.ci = binomial_ci(r.hits, r.trials, ci_level);
    return r;
}

} // namespace

std::vector<DetectionOperatingPoint> operating_points(DetectionSamples &samples,
                                                      const DetectionStatisticParams &params,
                                                      const std::vector<double> &kappa_grid, double ci_level)
{
    std::sort(samples.h0.begin(), samples.h0.end());
    std::sort(samples.h1.begin(), samples.h1.end());
    std::vector<DetectionOperatingPoint> points;
    points.reserve(kappa_grid.size());
    for (double kappa : kappa_grid) {
        const auto p = params.with_kappa(kappa);
        DetectionOperatingPoint op;
        op.kappa = kappa;
        op.pfa_analytic = pfa_analytic(p);
        op.pd_analytic = pd_analytic(p);
        op.pfa_mc = rate_from_sorted(samples.h0, kappa, ci_level);
        op.pd_mc = rate_from_sorted(samples.h1, kappa, ci_level);
        op.trials = samples.h0.size();
        points.push_back(op);
    }
    return points;
}

std::vector<DetectionOperatingPoint> roc_sweep(const RadarGeometry &geometry, cdouble alpha0, const cvec &w,
                                               const cvec &x, const std::vector<double> &kappa_grid,
                                               const MonteCarloOptions &options)
{
    if (kappa_grid.empty())
        throw std::invalid_argument("roc_sweep: kappa grid must be non-empty");
    const auto params = statistic_params(w, alpha0, geometry, x, 1.0);
    auto samples = sample_detection_statistics(geometry, alpha0, w, x, options);
    return operating_points(samples, params, kappa_grid, options.ci_level);
}

DetectionOperatingPoint simulate_detection(const RadarGeometry &geometry, cdouble alpha0, const cvec &w,
                                           const cvec &x, double kappa, const MonteCarloOptions &options)
{
    return roc_sweep(geometry, alpha0, w, x, {kappa}, options).front();
}

} // namespace nfjrc
