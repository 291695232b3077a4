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

#include "nfjrc/radar_sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nfjrc {

ResponseMatrix response_matrix(const ArrayConfig &cfg, const PolarPosition &pos)
{
    return ResponseMatrix(steering_vector(cfg, pos));
}

ClutterCovariance::ClutterCovariance(cmat w) : w_(std::move(w))
{
    if (w_.rows() != w_.cols() || w_.rows() == 0)
        throw std::invalid_argument("ClutterCovariance: matrix must be square and non-empty");
    const double scale = w_.norm();
    if (!std::isfinite(scale))
        throw std::invalid_argument("ClutterCovariance: non-finite entries");
    if ((w_ - w_.adjoint()).norm() > 1e-12 * scale)
        throw std::invalid_argument("ClutterCovariance: matrix is not Hermitian");
    w_ = 0.5 * (w_ + w_.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<cmat> eig(w_);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("ClutterCovariance: eigendecomposition failed");
    d_ = eig.eigenvalues();
    u_ = eig.eigenvectors();
    if (!(d_.minCoeff() > 0.0))
        throw std::runtime_error("ClutterCovariance: matrix is not positive definite (singular covariance)");
}

ClutterCovariance ClutterCovariance::identity_plus(const cmat &b)
{
    const Eigen::Index n = b.rows();
    if (n == 0)
        throw std::invalid_argument("ClutterCovariance: empty factor");
    if (!b.allFinite())
        throw std::invalid_argument("ClutterCovariance: non-finite entries");
    ClutterCovariance c;
    c.w_ = cmat::Identity(n, n);
    c.d_ = Eigen::VectorXd::Ones(n);
    c.u_ = cmat::Identity(n, n);
    if (b.cols() == 0)
        return c;
    c.w_.noalias() += b * b.adjoint();
    c.w_ = 0.5 * (c.w_ + c.w_.adjoint()).eval();
    // W = U (I + S S^T) U^H with the full left singular basis
    Eigen::JacobiSVD<cmat> svd(b, Eigen::ComputeFullU);
    c.u_ = svd.matrixU();
    const auto &s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i)
        c.d_(i) += s(i) * s(i);
    return c;
}

cvec ClutterCovariance::solve(const cvec &b) const
{
    if (b.size() != size())
        throw std::invalid_argument("ClutterCovariance::solve: dimension mismatch");
    return u_ * (u_.adjoint() * b).cwiseQuotient(d_.cast<cdouble>());
}

cmat ClutterCovariance::solve(const cmat &b) const
{
    if (b.rows() != size())
        throw std::invalid_argument("ClutterCovariance::solve: dimension mismatch");
    return u_ * (d_.cwiseInverse().cast<cdouble>().asDiagonal() * (u_.adjoint() * b));
}

double ClutterCovariance::inverse_quadratic_form(const cvec &b) const
{
    if (b.size() != size())
        throw std::invalid_argument("ClutterCovariance: dimension mismatch");
    // sum |u_i^H b|^2 / d_i, no cancellation between terms
    const cvec y = u_.adjoint() * b;
    double q = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i)
        q += std::norm(y(i)) / d_(i);
    return q;
}

RadarGeometry RadarGeometry::from_scene(const ArrayConfig &cfg, const Scene &scene)
{
    RadarGeometry g{response_matrix(cfg, scene.target.position), {}, {}};
    g.clutter.reserve(scene.clutter.size());
    g.clutter_scale.reserve(scene.clutter.size());
    for (const auto &c : scene.clutter) {
        g.clutter.push_back(response_matrix(cfg, c.position));
        g.clutter_scale.push_back(c.amplitude_scale);
    }
    return g;
}

cmat transmit_covariance(const BeamformerSet &beams)
{
    beams.validate();
    cmat rx = beams.radar_beam * beams.radar_beam.adjoint();
    for (const auto &u : beams.comm_beams)
        rx.noalias() += u * u.adjoint();
    return rx;
}

ClutterCovariance clutter_covariance(const RadarGeometry &geometry, const cmat &rx)
{
    const Eigen::Index n = geometry.size();
    if (rx.rows() != n || rx.cols() != n)
        throw std::invalid_argument("clutter_covariance: R_x dimension does not match the array");
    // A_l R_x A_l^H = c_l a_l a_l^H with c_l = a_l^T R_x conj(a_l) >= 0
    std::vector<cvec> cols;
    for (std::size_t l = 0; l < geometry.clutter.size(); ++l) {
        const double s = geometry.clutter_scale[l];
        const cvec &a = geometry.clutter[l].steering();
        const double c = std::real((a.transpose() * rx * a.conjugate()).value());
        if (s == 0.0 || !(c > 0.0))
            continue;
        cols.push_back(s * std::sqrt(c) * a);
    }
    cmat b(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        b.col(static_cast<Eigen::Index>(j)) = cols[j];
    return ClutterCovariance::identity_plus(b);
}

ClutterCovariance clutter_covariance(const ArrayConfig &cfg, const Scene &scene, const cmat &rx)
{
    return clutter_covariance(RadarGeometry::from_scene(cfg, scene), rx);
}

double scnr(const cvec &w, cdouble alpha0, const ResponseMatrix &target, const ClutterCovariance &cov,
            const cvec &x)
{
    if (w.size() != cov.size() || !(w.squaredNorm() > 0.0))
        throw std::invalid_argument("scnr: receive beamformer must be non-zero with length N");
    const cdouble gain = w.dot(target.apply(x));  // w^H A x
    const double denom = std::real(w.dot(cov.matrix() * w));
    return std::norm(alpha0) * std::norm(gain) / denom;
}

cvec optimal_receive_beamformer(cdouble /*alpha0*/, const ResponseMatrix &target, const ClutterCovariance &cov,
                                const cvec &x)
{
    // alpha_0 only scales the optimum, which is defined up to scale
    return cov.solve(target.apply(x));
}

double scnr_at_optimum(cdouble alpha0, const ResponseMatrix &target, const ClutterCovariance &cov, const cvec &x)
{
    return std::norm(alpha0) * cov.inverse_quadratic_form(target.apply(x));
}

double average_scnr(const BeamformerSet &beams, cdouble alpha0, const RadarGeometry &geometry)
{
    const cmat rx = transmit_covariance(beams);
    const ClutterCovariance cov = clutter_covariance(geometry, rx);
    // tr(A^H W^-1 A R_x) = tr(L^-1 A R_x A^H L^-H); A R_x A^H = a (a^T R_x conj a) a^H
    const cvec &a = geometry.target.steering();
    const cdouble c0c = (a.transpose() * rx * a.conjugate()).value();
    const double c0 = std::real(c0c);
    return std::norm(alpha0) * std::max(c0, 0.0) * cov.inverse_quadratic_form(a);
}

double average_scnr(const ArrayConfig &cfg, const BeamformerSet &beams, cdouble alpha0, const Scene &scene)
{
    return average_scnr(beams, alpha0, RadarGeometry::from_scene(cfg, scene));
}

double clutter_limited_scnr(const BeamformerSet &beams, cdouble alpha0, const RadarGeometry &geometry)
{
    const cmat rx = transmit_covariance(beams);
    const Eigen::Index n = geometry.size();
    cmat wc = cmat::Zero(n, n);
    for (std::size_t l = 0; l < geometry.clutter.size(); ++l) {
        const double s = geometry.clutter_scale[l];
        const cvec &a = geometry.clutter[l].steering();
        const double c = std::real((a.transpose() * rx * a.conjugate()).value());
        wc.noalias() += s * s * std::max(c, 0.0) * (a * a.adjoint());
    }
    const cvec &a = geometry.target.steering();
    const double c0 = std::max(std::real((a.transpose() * rx * a.conjugate()).value()), 0.0);
    if (std::norm(alpha0) * c0 == 0.0)
        return 0.0;

    Eigen::SelfAdjointEigenSolver<cmat> eig(0.5 * (wc + wc.adjoint()));
    const auto &d = eig.eigenvalues();
    const double floor = 1e-12 * std::max(d.cwiseAbs().maxCoeff(), 1e-300);
    const cvec y = eig.eigenvectors().adjoint() * a;
    double q = 0.0;
    double leak = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d(i) > floor)
            q += std::norm(y(i)) / d(i);
        else
            leak += std::norm(y(i));
    }
    if (leak > 1e-9 * a.squaredNorm())
        return std::numeric_limits<double>::infinity();
    return std::norm(alpha0) * c0 * q;
}

cdouble draw_symbol(SymbolAlphabet alphabet, RandomStream &rng)
{
    if (alphabet == SymbolAlphabet::Gaussian)
        return rng.complex_gaussian(1.0);
    const std::uint64_t bits = rng.next_u64();
    const double s = 1.0 / std::sqrt(2.0);
    return {(bits & 1U) ? s : -s, (bits & 2U) ? s : -s};
}

cvec transmit_signal(const BeamformerSet &beams, const std::vector<cdouble> &symbols)
{
    if (symbols.size() != beams.comm_beams.size() + 1)
        throw std::invalid_argument("transmit_signal: need one symbol per comm beam plus the radar symbol");
    cvec x = beams.radar_beam * symbols.back();
    for (std::size_t k = 0; k < beams.comm_beams.size(); ++k)
        x += beams.comm_beams[k] * symbols[k];
    return x;
}

cvec radar_snapshot(const RadarGeometry &geometry, cdouble alpha0, const BeamformerSet &beams, RandomStream &rng,
                    const SnapshotOptions &options)
{
    std::vector<cdouble> symbols(beams.comm_beams.size() + 1);
    for (auto &s : symbols)
        s = draw_symbol(options.symbols, rng);
    const cvec x = transmit_signal(beams, symbols);

    cvec s = alpha0 * geometry.target.apply(x);
    for (std::size_t l = 0; l < geometry.clutter.size(); ++l) {
        const double sigma = geometry.clutter_scale[l];
        const cdouble alpha = options.clutter == ClutterStatistics::Gaussian ? rng.complex_gaussian(sigma * sigma)
                                                                             : sigma * rng.unit_phasor();
        s += alpha * geometry.clutter[l].apply(x);
    }
    for (Eigen::Index i = 0; i < s.size(); ++i)
        s(i) += rng.complex_gaussian(1.0);
    return s;
}

cvec radar_snapshot(const ArrayConfig &cfg, const Scene &scene, const BeamformerSet &beams, RandomStream &rng,
                    const SnapshotOptions &options)
{
    return radar_snapshot(RadarGeometry::from_scene(cfg, scene), scene.target.reflectivity, beams, rng, options);
}

} // namespace nfjrc
