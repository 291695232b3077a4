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

// jrc_sim: command-line driver for the sweeps and the power optimiser.
//
// Exit codes: 0 success, 1 configuration error, 2 infeasible optimisation,
// 3 I/O error, 4 analytic/Monte Carlo disagreement (validate only).

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nfjrc/experiments.hpp"
#include "nfjrc/output.hpp"
#include "nfjrc/scenario_config.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kInfeasible = 2, kIoError = 3, kDisagreement = 4 };

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> out;
    std::optional<std::string> format;
    unsigned threads = 0;
};

nfjrc::ScenarioConfig resolve_config(const CommonOptions &o)
{
    nfjrc::ScenarioConfig cfg = o.config.empty() ? nfjrc::ScenarioConfig{} : nfjrc::load_scenario(o.config);
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.trials)
        cfg.detection.trials = *o.trials;
    if (o.out)
        cfg.output.directory = *o.out;
    if (o.format)
        cfg.output.format = *o.format == "json" ? nfjrc::OutputFormat::Json : nfjrc::OutputFormat::Csv;
    cfg.validate();
    return cfg;
}

class Writer {
public:
    Writer(const nfjrc::ScenarioConfig &cfg, std::string command) : cfg_(cfg), dir_(cfg.output.directory)
    {
        manifest_.command = std::move(command);
        manifest_.seed = cfg.seed;
        manifest_.config_hash = nfjrc::config_hash(cfg);
        manifest_.config = nfjrc::config_to_json(cfg);
    }

    void table(const nfjrc::Table &t)
    {
        const auto path = nfjrc::write_table(t, cfg_.output.format, dir_);
        manifest_.files.push_back(path.filename().string());
        std::printf("wrote %s (%zu rows)\n", path.string().c_str(), t.size());
    }

    void finish() { nfjrc::write_manifest(manifest_, dir_); }

private:
    const nfjrc::ScenarioConfig &cfg_;
    std::filesystem::path dir_;
    nfjrc::RunManifest manifest_;
};

void print_optimum(const nfjrc::OptimizationResult &r)
{
    if (!r.feasible) {
        std::printf("infeasible: no (P, rho, kappa) on the search grid meets all constraints\n");
        return;
    }
    std::printf("P* = %.6g W (%.3f dBm), rho = %.3g, kappa = %.6g, rate = %.4g bit/s/Hz, P_D = %.4g, P_FA = %.3g\n",
                r.p_star_w, nfjrc::watts_to_dbm(r.p_star_w), r.rho, r.kappa_star, r.achieved.rate, r.achieved.pd,
                r.achieved.pfa);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Near-field joint radar and communication link simulator"};
    app.set_version_flag("--version", std::string(nfjrc::kToolVersion));
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions opt;
    app.add_option("--config", opt.config, "Scenario JSON file (defaults when omitted)");
    app.add_option("--seed", opt.seed, "Master seed (overrides the config)");
    app.add_option("--trials", opt.trials, "Monte Carlo trials per operating point")->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out, "Output directory");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", opt.threads, "Worker threads (0: all cores)");

    auto *scnr = app.add_subcommand("scnr-sweep", "Average SCNR versus power, array size, carrier and clutter");
    auto *det = app.add_subcommand("detection-sweep", "P_D and P_FA versus threshold, analytic and Monte Carlo");
    auto *trade = app.add_subcommand("tradeoff", "Rate / detection trade-off versus power with the optimum marked");
    auto *optim = app.add_subcommand("optimize", "Minimum transmit power under rate and detection constraints");
    auto *valid = app.add_subcommand("validate", "Analytic versus Monte Carlo agreement report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        const nfjrc::ScenarioConfig cfg = resolve_config(opt);
        const std::string command = app.get_subcommands().front()->get_name();
        Writer out(cfg, command);
        int rc = kOk;

        if (scnr->parsed()) {
            const auto r = nfjrc::run_scnr_sweep(cfg, opt.threads);
            out.table(r.records);
            out.table(r.summary);
        } else if (det->parsed()) {
            out.table(nfjrc::run_detection_sweep(cfg, opt.threads));
        } else if (trade->parsed()) {
            const auto r = nfjrc::run_tradeoff(cfg);
            out.table(r.records);
            out.table(r.levels);
            out.table(r.optimum);
            print_optimum(r.result);
            if (!r.result.feasible)
                rc = kInfeasible;
        } else if (optim->parsed()) {
            const auto r = nfjrc::run_optimize(cfg);
            out.table(r.optimum);
            print_optimum(r.result);
            if (!r.result.feasible)
                rc = kInfeasible;
        } else if (valid->parsed()) {
            const auto r = nfjrc::run_validate(cfg, opt.threads);
            out.table(r.records);
            std::printf("%zu of %zu checks within 3 standard errors\n", r.agreeing, r.checked);
            if (!r.all_agree())
                rc = kDisagreement;
        }
        out.finish();
        return rc;
    } catch (const nfjrc::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const nfjrc::IoError &e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
