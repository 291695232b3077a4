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

#include <optional>
#include <string>
#include <vector>

#include "nfjrc/output.hpp"
#include "nfjrc/power_allocation.hpp"
#include "nfjrc/scenario_config.hpp"

namespace nfjrc {

/// Records carry seed and config_hash columns after the metric columns.
struct Provenance {
    std::uint64_t seed = 0;
    std::string config_hash;

    static Provenance of(const ScenarioConfig &cfg);
};

struct ScnrSweepResult {
    Table records;  // per (N, f_c, clutter, power)
    Table summary;  // per (f_c, N): clutter-free mean and intense-clutter error
};

/// Average SCNR over cfg.scnr_sweep.realizations clutter placements for every
/// (N, f_c, clutter level, power) cell. Placements are shared across cells.
ScnrSweepResult run_scnr_sweep(const ScenarioConfig &cfg, unsigned threads = 0);

/// Analytic and Monte Carlo P_FA / P_D over the kappa grid for each
/// detection power and both clutter levels.
Table run_detection_sweep(const ScenarioConfig &cfg, unsigned threads = 0);

struct TradeoffRun {
    Table records;  // per (P, rho): best admissible kappa
    Table levels;   // per P: best rate, best P_D, feasibility, marked flag
    Table optimum;  // minimize_power certificate (one row)
    TradeoffResult sweep;
    OptimizationResult result;
};

TradeoffRun run_tradeoff(const ScenarioConfig &cfg);

struct OptimizeRun {
    Table optimum;
    OptimizationResult result;
};

OptimizeRun run_optimize(const ScenarioConfig &cfg);

struct ValidateRun {
    Table records;  // per (clutter, power, kappa, quantity) in the checked band
    std::size_t checked = 0;
    std::size_t agreeing = 0;
    bool all_agree() const { return checked == agreeing; }
};

/// Analytic-versus-Monte-Carlo agreement (3 binomial standard errors) wherever
/// the analytic probability lies in [1e-3, 1 - 1e-3].
ValidateRun run_validate(const ScenarioConfig &cfg, unsigned threads = 0);

/// Unit-norm MVDR receive beam and the pilot snapshot x at (P, rho).
struct DetectionSetup {
    cvec w;
    cvec x;
    DetectionStatisticParams params;
};

DetectionSetup detection_setup(const LinkScenario &scenario, double power_w, double rho);

/// Column schemas, shared with the CSV round-trip.
std::vector<Column> scnr_columns();
std::vector<Column> scnr_summary_columns();
std::vector<Column> detection_columns();
std::vector<Column> tradeoff_columns();
std::vector<Column> tradeoff_level_columns();
std::vector<Column> optimum_columns();
std::vector<Column> validate_columns();

} // namespace nfjrc
