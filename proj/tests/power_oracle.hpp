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

// Exhaustive search for the least feasible power. Per (P, rho) it reads the
// statistic parameters from evaluate_point and scans a fine kappa grid with
// its own tail probabilities; no bisection and no Neyman-Pearson shortcut.

#include <cmath>
#include <optional>
#include <vector>

#include "nfjrc/power_allocation.hpp"

namespace oracle {

inline double tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

struct BruteForce {
    std::optional<double> p_star_w;
    double rho = 0;
    double kappa = 0;
};

inline BruteForce brute_force_min_power(const nfjrc::LinkScenario &s, const nfjrc::ConstraintTargets &t,
                                        double p_min_w, int power_points, int rho_points, int kappa_points,
                                        double kappa_span = 10.0)
{
    BruteForce out;
    for (int i = 0; i < power_points; ++i) {
        const double p = p_min_w * std::pow(t.p_max_w / p_min_w, double(i) / (power_points - 1));
        for (int r = 0; r < rho_points; ++r) {
            const double rho = double(r) / (rho_points - 1);
            const auto m = nfjrc::evaluate_point(s, t, p, rho, 0.0);
            if (m.degenerate || !m.c1_rate || !m.c4_power)
                continue;
            const double mu2 = m.mu1_abs * m.mu1_abs;
            const double scale = m.mu1_abs * std::sqrt(2.0 * m.sigma2);
            for (int k = 0; k < kappa_points; ++k) {
                const double kappa = kappa_span * (-1.0 + 2.0 * k / (kappa_points - 1)) * (m.sigma2 + mu2);
                const double pfa = tail(kappa / scale);
                if (pfa > t.pfa_max)
                    continue;
                // smallest admissible kappa maximises the detection probability
                if (tail((kappa - 2.0 * mu2) / scale) >= t.pd_min) {
                    out.p_star_w = p;
                    out.rho = rho;
                    out.kappa = kappa;
                    return out;
                }
                break;
            }
        }
    }
    return out;
}

} // namespace oracle
