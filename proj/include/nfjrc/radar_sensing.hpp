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

#include <vector>


#include "nfjrc/array_geometry.hpp"
#include "nfjrc/comm_link.hpp"
#include "nfjrc/propagation.hpp"
#include "nfjrc/stats.hpp"
#include "nfjrc/types.hpp"

namespace nfjrc {

/// Monostatic two-way response A = a a^T (plain transpose). Stored as the
/// steering vector; products never form the dense matrix.
class ResponseMatrix {
public:
    explicit ResponseMatrix(cvec steering) : a_(std::move(steering)) {}

    const cvec &steering() const { return a_; }
    Eigen::Index size() const { return a_.size(); }

    cmat matrix() const { return a_ * a_.transpose(); }

    /// A x = a (a^T x)
    cvec apply(const cvec &x) const { return a_ * bilinear(a_, x); }

private:
    cvec a_;
};

ResponseMatrix response_matrix(const ArrayConfig &cfg, const PolarPosition &pos);

/// Hermitian positive-definite clutter-plus-noise covariance, kept in
/// eigen-factored form. Construction throws if the matrix is not HPD.
class ClutterCovariance {
public:
    /// General Hermitian positive definite W.
    explicit ClutterCovariance(cmat w);

    /// W = I + B B^H, factored through the SVD of B. Stays accurate when the
    /// low-rank part exceeds the identity by many orders of magnitude.
    static ClutterCovariance identity_plus(const cmat &b);

    const cmat &matrix() const { return w_; }
    Eigen::Index size() const { return w_.rows(); }

    /// Eigenvalues of W in the order of the columns of eigenvectors().
    const Eigen::VectorXd &eigenvalues() const { return d_; }
    const cmat &eigenvectors() const { return u_; }

    cvec solve(const cvec &b) const;
    cmat solve(const cmat &b) const;

    /// b^H W^-1 b
    double inverse_quadratic_form(const cvec &b) const;

private:
    ClutterCovariance() = default;

    cmat w_;
    cmat u_;
    Eigen::VectorXd d_;
};

/// Target and clutter responses of a scene, computed once per array.
struct RadarGeometry {
    ResponseMatrix target;
    std::vector<ResponseMatrix> clutter;
    std::vector<double> clutter_scale;  // sigma_l

    static RadarGeometry from_scene(const ArrayConfig &cfg, const Scene &scene);

    Eigen::Index size() const { return target.size(); }
};

/// R_x = sum_k u_k u_k^H + v v^H
cmat transmit_covariance(const BeamformerSet &beams);

/// W = sum_l sigma_l^2 A_l R_x A_l^H + I
ClutterCovariance clutter_covariance(const ArrayConfig &cfg, const Scene &scene, const cmat &rx);
ClutterCovariance clutter_covariance(const RadarGeometry &geometry, const cmat &rx);

/// |alpha_0|^2 |w^H A x|^2 / (w^H W w). Throws for w = 0.
double scnr(const cvec &w, cdouble alpha0, const ResponseMatrix &target, const ClutterCovariance &cov,
            const cvec &x);

/// w* = W^-1 A x, unnormalised.
cvec optimal_receive_beamformer(cdouble alpha0, const ResponseMatrix &target, const ClutterCovariance &cov,
                                const cvec &x);

/// |alpha_0|^2 (A x)^H W^-1 (A x)
double scnr_at_optimum(cdouble alpha0, const ResponseMatrix &target, const ClutterCovariance &cov, const cvec &x);

/// |alpha_0|^2 tr(A^H W^-1 A R_x), the symbol average of scnr_at_optimum.
double average_scnr(const BeamformerSet &beams, cdouble alpha0, const RadarGeometry &geometry);
double average_scnr(const ArrayConfig &cfg, const BeamformerSet &beams, cdouble alpha0, const Scene &scene);

/// Average SCNR with the noise identity dropped from W (pseudo-inverse of the
/// clutter part). +inf when the target steering has a component outside the
/// clutter span: the clutter can then be nulled and the SCNR has no finite limit.
double clutter_limited_scnr(const BeamformerSet &beams, cdouble alpha0, const RadarGeometry &geometry);

enum class SymbolAlphabet { Qpsk, Gaussian };

/// One unit-power symbol.
cdouble draw_symbol(SymbolAlphabet alphabet, RandomStream &rng);

/// x = sum_k u_k s_k + v s_0, with symbols ordered (s_1..s_K, s_0).
cvec transmit_signal(const BeamformerSet &beams, const std::vector<cdouble> &symbols);

struct SnapshotOptions {
    SymbolAlphabet symbols = SymbolAlphabet::Qpsk;
    ClutterStatistics clutter = ClutterStatistics::Gaussian;
};

/// s = alpha_0 A x + sum_l alpha_l A_l x + n for fresh symbols, clutter and noise.
cvec radar_snapshot(const RadarGeometry &geometry, cdouble alpha0, const BeamformerSet &beams, RandomStream &rng,
                    const SnapshotOptions &options = {});
cvec radar_snapshot(const ArrayConfig &cfg, const Scene &scene, const BeamformerSet &beams, RandomStream &rng,
                    const SnapshotOptions &options = {});

} // namespace nfjrc
