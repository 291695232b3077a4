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

#include "nfjrc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nfjrc/parallel.hpp"

namespace nfjrc {

Provenance Provenance::of(const ScenarioConfig &cfg) { return {cfg.seed, nfjrc::config_hash(cfg)}; }

namespace {

using K = ColumnKind;

std::vector<Column> with_provenance(std::vector<Column> cols)
{
    cols.push_back({"seed", K::Text});
    cols.push_back({"config_hash", K::Text});
    return cols;
}

void add_provenance(std::vector<Cell> &row, const Provenance &p)
{
    // seed as text: u64 does not fit the signed integer column
    row.emplace_back(std::to_string(p.seed));
    row.emplace_back(p.config_hash);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ClutterLevel {
    const char *name;
    double sigma;
};

std::vector<ClutterLevel> detection_levels(const ScenarioConfig &cfg)
{
    return {{"light", cfg.clutter_levels.light}, {"intense", cfg.clutter_levels.intense}};
}

std::uint64_t cell_seed(const ScenarioConfig &cfg, std::uint64_t level, std::uint64_t power_index)
{
    const std::uint64_t id = (static_cast<std::uint64_t>(StreamTag::Detection) << 48) | (level << 24) | power_index;
    return derive_seed(cfg.seed, id);
}

std::vector<double> sorted(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

std::vector<Column> scnr_columns()
{
    return with_provenance({{"power_dbm", K::Real},
                            {"n_antennas", K::Integer},
                            {"carrier_ghz", K::Real},
                            {"clutter", K::Text},
                            {"scnr_db_mean", K::Real},
                            {"scnr_db_std", K::Real},
                            {"realizations", K::Integer}});
}

std::vector<Column> scnr_summary_columns()
{
    return with_provenance({{"carrier_ghz", K::Real},
                            {"n_antennas", K::Integer},
                            {"mean_scnr_db", K::Real},
                            {"error_db", K::Real},
                            {"error_light_db", K::Real},
                            {"power_points", K::Integer},
                            {"realizations", K::Integer}});
}

std::vector<Column> detection_columns()
{
    return with_provenance({{"kappa", K::Real},
                            {"power_dbm", K::Real},
                            {"clutter", K::Text},
                            {"pfa_analytic", K::Real},
                            {"pd_analytic", K::Real},
                            {"pfa_mc", K::Real},
                            {"pfa_ci_lo", K::Real},
                            {"pfa_ci_hi", K::Real},
                            {"pd_mc", K::Real},
                            {"pd_ci_lo", K::Real},
                            {"pd_ci_hi", K::Real},
                            {"trials", K::Integer}});
}

std::vector<Column> tradeoff_columns()
{
    return with_provenance({{"power_dbm", K::Real},
                            {"rho", K::Real},
                            {"kappa", K::Real},
                            {"rate_bps_hz", K::Real},
                            {"pd", K::Real},
                            {"pfa", K::Real},
                            {"feasible", K::Boolean}});
}

std::vector<Column> tradeoff_level_columns()
{
    return with_provenance({{"power_dbm", K::Real},
                            {"best_rate_bps_hz", K::Real},
                            {"best_pd", K::Real},
                            {"rate_feasible", K::Boolean},
                            {"detection_feasible", K::Boolean},
                            {"feasible", K::Boolean},
                            {"marked", K::Boolean}});
}

std::vector<Column> optimum_columns()
{
    return with_provenance({{"feasible", K::Boolean},
                            {"p_star_w", K::Real},
                            {"p_star_dbm", K::Real},
                            {"rho", K::Real},
                            {"kappa", K::Real},
                            {"rate_bps_hz", K::Real},
                            {"pd", K::Real},
                            {"pfa", K::Real},
                            {"scnr_db", K::Real},
                            {"tolerance_w", K::Real},
                            {"bracket_lo_w", K::Real},
                            {"bracket_hi_w", K::Real},
                            {"grid_evaluations", K::Integer},
                            {"bisection_steps", K::Integer}});
}

std::vector<Column> validate_columns()
{
    return with_provenance({{"clutter", K::Text},
                            {"power_dbm", K::Real},
                            {"kappa", K::Real},
                            {"quantity", K::Text},
                            {"analytic", K::Real},
                            {"empirical", K::Real},
                            {"std_error", K::Real},
                            {"within_3se", K::Boolean},
                            {"trials", K::Integer}});
}

DetectionSetup detection_setup(const LinkScenario &s, double power_w, double rho)
{
    const BeamformerSet beams = split_beams(s, s.normalise(power_w), rho);
    DetectionSetup d;
    d.x = transmit_signal(beams, s.pilots);
    const ClutterCovariance cov = clutter_covariance(s.radar, transmit_covariance(beams));
    d.w = optimal_receive_beamformer(s.alpha0, s.radar.target, cov, d.x);
    const double norm = d.w.norm();
    if (!(norm > 0.0))
        throw std::domain_error("detection_setup: the radar beam does not illuminate the target");
    d.w /= norm;
    d.params = statistic_params(d.w, s.alpha0, s.radar, d.x, s.eta);
    return d;
}

// ---------------------------------------------------------------------------

ScnrSweepResult run_scnr_sweep(const ScenarioConfig &cfg, unsigned threads)
{
    cfg.validate();
    const Provenance prov = Provenance::of(cfg);
    const auto powers = cfg.power_sweep.powers_w();
    const auto &sw = cfg.scnr_sweep;
    const std::vector<ClutterLevel> levels{
        {"none", 0.0}, {"light", cfg.clutter_levels.light}, {"intense", cfg.clutter_levels.intense}};

    struct CellKey {
        int n;
        double fc_ghz;
        std::size_t level;
    };
    std::vector<CellKey> cells;
    for (int n : sw.antennas)
        for (double f : sw.carrier_ghz)
            for (std::size_t l = 0; l < levels.size(); ++l)
                cells.push_back({n, f, l});

    const auto n_real = static_cast<std::size_t>(sw.realizations);
    const std::size_t n_pow = powers.size();
    // db[(cell * n_real + r) * n_pow + p]
    std::vector<double> db(cells.size() * n_real * n_pow);
    parallel_for(cells.size() * n_real, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t job = begin; job < end; ++job) {
            const CellKey &c = cells[job / n_real];
            const std::uint64_t r = cfg.scene.realization + job % n_real;
            const LinkScenario s = build_link_scenario(cfg, c.n, c.fc_ghz * 1e9, levels[c.level].sigma, r);
            for (std::size_t p = 0; p < n_pow; ++p) {
                const BeamformerSet beams = split_beams(s, s.normalise(powers[p]), sw.rho);
                db[job * n_pow + p] = linear_to_db(average_scnr(beams, s.alpha0, s.radar));
            }
        }
    });

    // mean dB per (cell, power)
    std::vector<double> mean(cells.size() * n_pow);
    std::vector<double> stdev(cells.size() * n_pow);
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (std::size_t p = 0; p < n_pow; ++p) {
            double sum = 0.0;
            for (std::size_t r = 0; r < n_real; ++r)
                sum += db[(c * n_real + r) * n_pow + p];
            const double m = sum / static_cast<double>(n_real);
            double ss = 0.0;
            for (std::size_t r = 0; r < n_real; ++r) {
                const double d = db[(c * n_real + r) * n_pow + p] - m;
                ss += d * d;
            }
            mean[c * n_pow + p] = m;
            stdev[c * n_pow + p] = n_real > 1 ? std::sqrt(ss / static_cast<double>(n_real - 1)) : 0.0;
        }

    ScnrSweepResult out{Table("scnr_sweep", scnr_columns()), Table("scnr_summary", scnr_summary_columns())};
    // sorted by power, then N, f_c and clutter level in config order
    for (std::size_t p = 0; p < n_pow; ++p)
        for (std::size_t c = 0; c < cells.size(); ++c) {
            std::vector<Cell> row{watts_to_dbm(powers[p]),
                                  static_cast<std::int64_t>(cells[c].n),
                                  cells[c].fc_ghz,
                                  std::string(levels[cells[c].level].name),
                                  mean[c * n_pow + p],
                                  stdev[c * n_pow + p],
                                  static_cast<std::int64_t>(n_real)};
            add_provenance(row, prov);
            out.records.add_row(std::move(row));
        }

    auto cell_index = [&](int n, double f, std::size_t level) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].n == n && cells[c].fc_ghz == f && cells[c].level == level)
                return c;
        throw std::logic_error("run_scnr_sweep: missing cell");
    };
    for (double f : sw.carrier_ghz)
        for (int n : sw.antennas) {
            const std::size_t free = cell_index(n, f, 0);
            const std::size_t light = cell_index(n, f, 1);
            const std::size_t intense = cell_index(n, f, 2);
            double m = 0.0, e = 0.0, el = 0.0;
            for (std::size_t p = 0; p < n_pow; ++p) {
                m += mean[free * n_pow + p];
                e += mean[free * n_pow + p] - mean[intense * n_pow + p];
                el += mean[free * n_pow + p] - mean[light * n_pow + p];
            }
            const auto np = static_cast<double>(n_pow);
            std::vector<Cell> row{f,      static_cast<std::int64_t>(n), m / np, e / np, el / np,
                                  static_cast<std::int64_t>(n_pow), static_cast<std::int64_t>(n_real)};
            add_provenance(row, prov);
            out.summary.add_row(std::move(row));
        }
    return out;
}

Table run_detection_sweep(const ScenarioConfig &cfg, unsigned threads)
{
    cfg.validate();
    const Provenance prov = Provenance::of(cfg);
    const auto kappas = cfg.detection.kappa_grid();
    const auto powers_dbm = sorted(cfg.detection.powers_dbm);
    const auto levels = detection_levels(cfg);

    Table table("detection_sweep", detection_columns());
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const LinkScenario s = build_link_scenario(cfg, cfg.array.n_antennas, cfg.array.carrier_freq_hz,
                                                   levels[l].sigma, cfg.scene.realization);
        for (std::size_t p = 0; p < powers_dbm.size(); ++p) {
            const DetectionSetup d = detection_setup(s, dbm_to_watts(powers_dbm[p]), cfg.detection.rho);
            MonteCarloOptions mc;
            mc.trials = cfg.detection.trials;
            mc.seed = cell_seed(cfg, l, p);
            mc.threads = threads;
            mc.ci_level = cfg.detection.ci_level;
            mc.clutter = cfg.detection.clutter_statistics;
            const auto points = roc_sweep(s.radar, s.alpha0, d.w, d.x, kappas, mc);
            for (const auto &op : points) {
                std::vector<Cell> row{op.kappa,
                                      powers_dbm[p],
                                      std::string(levels[l].name),
                                      op.pfa_analytic,
                                      op.pd_analytic,
                                      op.pfa_mc.rate,
                                      op.pfa_mc.ci.lo,
                                      op.pfa_mc.ci.hi,
                                      op.pd_mc.rate,
                                      op.pd_mc.ci.lo,
                                      op.pd_mc.ci.hi,
                                      static_cast<std::int64_t>(op.trials)};
                add_provenance(row, prov);
                table.add_row(std::move(row));
            }
        }
    }
    return table;
}

namespace {

Table optimum_table(const OptimizationResult &r, const Provenance &prov)
{
    Table t("optimum", optimum_columns());
    const auto &m = r.achieved;
    std::vector<Cell> row{r.feasible,
                          r.feasible ? r.p_star_w : kNaN,
                          r.feasible ? watts_to_dbm(r.p_star_w) : kNaN,
                          r.feasible ? r.rho : kNaN,
                          r.feasible ? r.kappa_star : kNaN,
                          r.feasible ? m.rate : kNaN,
                          r.feasible ? m.pd : kNaN,
                          r.feasible ? m.pfa : kNaN,
                          r.feasible ? linear_to_db(m.scnr) : kNaN,
                          r.tolerance_w,
                          r.feasible ? r.bracket_lo_w : kNaN,
                          r.feasible ? r.bracket_hi_w : kNaN,
                          static_cast<std::int64_t>(r.grid_evaluations),
                          static_cast<std::int64_t>(r.bisection_steps)};
    add_provenance(row, prov);
    t.add_row(std::move(row));
    return t;
}

} // namespace

TradeoffRun run_tradeoff(const ScenarioConfig &cfg)
{
    cfg.validate();
    const Provenance prov = Provenance::of(cfg);
    const LinkScenario s = build_link_scenario(cfg);
    const ConstraintTargets targets = cfg.constraint_targets();
    const SearchGrid grid = cfg.optimizer.search_grid();

    TradeoffRun run{Table("tradeoff", tradeoff_columns()), Table("tradeoff_levels", tradeoff_level_columns()),
                    Table("optimum", optimum_columns()), {}, {}};
    run.sweep = tradeoff_sweep(s, targets, cfg.optimizer.tradeoff_powers_w(), grid);
    for (std::size_t i = 0; i < run.sweep.levels.size(); ++i) {
        const auto &level = run.sweep.levels[i];
        const double p_dbm = watts_to_dbm(level.power_w);
        bool rate_ok = false, det_ok = false;
        for (const auto &split : level.inner.splits) {
            const auto &m = split.metrics;
            rate_ok = rate_ok || (m.c1_rate && m.c4_power);
            det_ok = det_ok || (!m.degenerate && m.c2_pfa && m.c3_pd && m.c4_power);
            std::vector<Cell> row{p_dbm, m.rho, m.kappa, m.rate, m.pd, m.pfa, m.feasible()};
            add_provenance(row, prov);
            run.records.add_row(std::move(row));
        }
        std::vector<Cell> row{p_dbm,   level.best_rate, level.best_pd,
                              rate_ok, det_ok,          level.feasible,
                              run.sweep.marked && *run.sweep.marked == i};
        add_provenance(row, prov);
        run.levels.add_row(std::move(row));
    }
    run.result = minimize_power(s, targets, grid);
    run.optimum = optimum_table(run.result, prov);
    return run;
}

OptimizeRun run_optimize(const ScenarioConfig &cfg)
{
    cfg.validate();
    const LinkScenario s = build_link_scenario(cfg);
    OptimizeRun run{Table("optimum", optimum_columns()), {}};
    run.result = minimize_power(s, cfg.constraint_targets(), cfg.optimizer.search_grid());
    run.optimum = optimum_table(run.result, Provenance::of(cfg));
    return run;
}

ValidateRun run_validate(const ScenarioConfig &cfg, unsigned threads)
{
    cfg.validate();
    const Provenance prov = Provenance::of(cfg);
    const auto kappas = cfg.detection.kappa_grid();
    const auto powers_dbm = sorted(cfg.detection.powers_dbm);
    const auto levels = detection_levels(cfg);

    ValidateRun run{Table("validate", validate_columns())};
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const LinkScenario s = build_link_scenario(cfg, cfg.array.n_antennas, cfg.array.carrier_freq_hz,
                                                   levels[l].sigma, cfg.scene.realization);
        for (std::size_t p = 0; p < powers_dbm.size(); ++p) {
            const DetectionSetup d = detection_setup(s, dbm_to_watts(powers_dbm[p]), cfg.detection.rho);
            MonteCarloOptions mc;
            mc.trials = cfg.detection.trials;
            mc.seed = cell_seed(cfg, l, p);
            mc.threads = threads;
            mc.ci_level = cfg.detection.ci_level;
            mc.clutter = cfg.detection.clutter_statistics;
            for (const auto &op : roc_sweep(s.radar, s.alpha0, d.w, d.x, kappas, mc)) {
                const std::pair<const char *, std::pair<double, double>> checks[] = {
                    {"pfa", {op.pfa_analytic, op.pfa_mc.rate}}, {"pd", {op.pd_analytic, op.pd_mc.rate}}};
                for (const auto &[what, values] : checks) {
                    const auto [analytic, empirical] = values;
                    if (!(analytic >= 1e-3 && analytic <= 1.0 - 1e-3))
                        continue;
                    const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(op.trials));
                    const bool ok = std::abs(analytic - empirical) <= 3.0 * se;
                    ++run.checked;
                    run.agreeing += ok ? 1 : 0;
                    std::vector<Cell> row{std::string(levels[l].name), powers_dbm[p], op.kappa,
                                          std::string(what),           analytic,      empirical,
                                          se,                          ok,            static_cast<std::int64_t>(op.trials)};
                    add_provenance(row, prov);
                    run.records.add_row(std::move(row));
                }
            }
        }
    }
    return run;
}

} // namespace nfjrc
