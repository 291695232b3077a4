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

#include "nfjrc/scenario_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nfjrc {

using nlohmann::json;

double ChannelSection::noise_power_w() const { return dbm_to_watts(noise_power_dbm); }

double ChannelSection::relay_destination_distance_m() const
{
    const double dtheta = (relay_angle_deg - destination_angle_deg) * kPi / 180.0;
    const double d2 = relay_range_m * relay_range_m + destination_range_m * destination_range_m -
                      2.0 * relay_range_m * destination_range_m * std::cos(dtheta);
    return std::sqrt(std::max(d2, 0.0));
}

std::vector<double> PowerSweepSection::powers_w() const
{
    std::vector<double> out(static_cast<std::size_t>(points));
    const double lo_w = dbm_to_watts(min_dbm);
    const double hi_w = dbm_to_watts(max_dbm);
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        out[static_cast<std::size_t>(i)] =
            scale == SweepScale::Log ? dbm_to_watts(min_dbm + t * (max_dbm - min_dbm)) : lo_w + t * (hi_w - lo_w);
    }
    return out;
}

std::vector<double> DetectionSection::kappa_grid() const
{
    std::vector<double> out(static_cast<std::size_t>(kappa_points));
    for (int i = 0; i < kappa_points; ++i)
        out[static_cast<std::size_t>(i)] = kappa_min + (kappa_max - kappa_min) * i / (kappa_points - 1);
    return out;
}

SearchGrid OptimizerSection::search_grid() const
{
    SearchGrid g;
    g.p_min_w = p_min_w;
    g.power_points = power_points;
    g.rho_points = rho_points;
    g.kappa_points = kappa_points;
    g.kappa_span = kappa_span;
    g.tol_w = tol_w;
    g.fixed_rho = fixed_rho;
    g.np_threshold = np_threshold;
    return g;
}

std::vector<double> OptimizerSection::tradeoff_powers_w() const
{
    PowerSweepSection s;
    s.min_dbm = tradeoff_min_dbm;
    s.max_dbm = tradeoff_max_dbm;
    s.points = tradeoff_points;
    return s.powers_w();
}

ConstraintTargets ScenarioConfig::constraint_targets() const
{
    ConstraintTargets t;
    t.gamma_min = rate_threshold(targets.rate_bps_hz);
    t.pfa_max = targets.pfa_max;
    t.pd_min = targets.pd_min;
    t.p_max_w = optimizer.p_max_w;
    return t;
}

PathLossModel ScenarioConfig::path_loss_model() const
{
    return PathLossModel{path_loss.kind, path_loss.bs_height_m, path_loss.ut_height_m};
}

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &what) { throw ConfigError(path + ": " + what); }

void positive(const std::string &path, double v)
{
    if (!(v > 0.0) || !std::isfinite(v))
        fail(path, "must be a finite positive number");
}

void finite(const std::string &path, double v)
{
    if (!std::isfinite(v))
        fail(path, "must be finite");
}

void probability(const std::string &path, double v)
{
    if (!(v >= 0.0 && v <= 1.0))
        fail(path, "must lie in [0, 1]");
}

void angle_deg(const std::string &path, double v)
{
    if (!(v > 0.0 && v < 180.0))
        fail(path, "must lie in (0, 180) degrees");
}

} // namespace

void ScenarioConfig::validate() const
{
    if (array.n_antennas < 1)
        fail("array.n_antennas", "must be >= 1");
    positive("array.carrier_freq_hz", array.carrier_freq_hz);
    if (array.spacing_m)
        positive("array.spacing_m", *array.spacing_m);

    if (scene.clutter_count < 0)
        fail("scene.clutter_count", "must be >= 0");
    positive("scene.target_range_m", scene.target_range_m);
    if (scene.clutter_count > 0 && !(scene.target_range_m > kMinClutterRange))
        fail("scene.target_range_m", "must exceed the 0.5 m minimum clutter range");
    angle_deg("scene.target_angle_deg", scene.target_angle_deg);
    if (!(scene.angle_exclusion_rad >= 0.0 && scene.angle_exclusion_rad < kPi / 2.0))
        fail("scene.angle_exclusion_rad", "must lie in [0, pi/2)");
    if (!(scene.rcs_scale >= 0.0) || !std::isfinite(scene.rcs_scale))
        fail("scene.rcs_scale", "must be finite and >= 0");
    if (!(scene.sigma_c >= 0.0) || !std::isfinite(scene.sigma_c))
        fail("scene.sigma_c", "must be finite and >= 0");

    positive("path_loss.bs_height_m", path_loss.bs_height_m);
    positive("path_loss.ut_height_m", path_loss.ut_height_m);
    if (path_loss.kind == PathLossKind::UmiLos && !(path_loss.bs_height_m > 1.0 && path_loss.ut_height_m > 1.0))
        fail("path_loss", "umi_los needs antenna heights above the 1 m effective environment height");

    positive("channels.relay_range_m", channels.relay_range_m);
    angle_deg("channels.relay_angle_deg", channels.relay_angle_deg);
    positive("channels.destination_range_m", channels.destination_range_m);
    angle_deg("channels.destination_angle_deg", channels.destination_angle_deg);
    if (!(channels.relay_destination_distance_m() > 0.0))
        fail("channels", "relay and destination must not coincide");
    finite("channels.noise_power_dbm", channels.noise_power_dbm);
    positive("channels.noise_var_dest_w", channels.noise_var_dest_w);
    positive("channels.noise_var_relay_w", channels.noise_var_relay_w);
    finite("channels.relay_power_dbm", channels.relay_power_dbm);

    finite("power_sweep.min_dbm", power_sweep.min_dbm);
    finite("power_sweep.max_dbm", power_sweep.max_dbm);
    if (!(power_sweep.min_dbm < power_sweep.max_dbm))
        fail("power_sweep", "min_dbm must be below max_dbm");
    if (power_sweep.points < 2)
        fail("power_sweep.points", "must be >= 2");

    if (scnr_sweep.antennas.empty())
        fail("scnr_sweep.antennas", "must be non-empty");
    for (int n : scnr_sweep.antennas)
        if (n < 1)
            fail("scnr_sweep.antennas", "entries must be >= 1");
    if (scnr_sweep.carrier_ghz.empty())
        fail("scnr_sweep.carrier_ghz", "must be non-empty");
    for (double f : scnr_sweep.carrier_ghz)
        positive("scnr_sweep.carrier_ghz", f);
    if (scnr_sweep.realizations < 1)
        fail("scnr_sweep.realizations", "must be >= 1");
    probability("scnr_sweep.rho", scnr_sweep.rho);

    if (!(clutter_levels.light >= 0.0) || !std::isfinite(clutter_levels.light))
        fail("clutter_levels.light", "must be finite and >= 0");
    if (!(clutter_levels.intense >= 0.0) || !std::isfinite(clutter_levels.intense))
        fail("clutter_levels.intense", "must be finite and >= 0");

    positive("detection.eta", detection.eta);
    finite("detection.kappa_min", detection.kappa_min);
    finite("detection.kappa_max", detection.kappa_max);
    if (!(detection.kappa_min < detection.kappa_max))
        fail("detection", "kappa_min must be below kappa_max");
    if (detection.kappa_points < 2)
        fail("detection.kappa_points", "must be >= 2");
    if (detection.powers_dbm.empty())
        fail("detection.powers_dbm", "must be non-empty");
    for (double p : detection.powers_dbm)
        finite("detection.powers_dbm", p);
    probability("detection.rho", detection.rho);
    if (!(detection.rho > 0.0))
        fail("detection.rho", "must be > 0 so the radar beam is active");
    if (detection.trials < 1)
        fail("detection.trials", "must be >= 1");
    if (!(detection.ci_level > 0.0 && detection.ci_level < 1.0))
        fail("detection.ci_level", "must lie in (0, 1)");

    if (!(targets.rate_bps_hz >= 0.0) || !std::isfinite(targets.rate_bps_hz))
        fail("targets.rate_bps_hz", "must be finite and >= 0");
    probability("targets.pfa_max", targets.pfa_max);
    probability("targets.pd_min", targets.pd_min);

    positive("optimizer.p_max_w", optimizer.p_max_w);
    positive("optimizer.p_min_w", optimizer.p_min_w);
    if (!(optimizer.p_min_w < optimizer.p_max_w))
        fail("optimizer", "p_min_w must be below p_max_w");
    if (optimizer.power_points < 2)
        fail("optimizer.power_points", "must be >= 2");
    if (optimizer.rho_points < 1)
        fail("optimizer.rho_points", "must be >= 1");
    if (optimizer.kappa_points < 2)
        fail("optimizer.kappa_points", "must be >= 2");
    positive("optimizer.kappa_span", optimizer.kappa_span);
    if (!(optimizer.tol_w >= 0.0) || !std::isfinite(optimizer.tol_w))
        fail("optimizer.tol_w", "must be finite and >= 0");
    if (optimizer.fixed_rho)
        probability("optimizer.fixed_rho", *optimizer.fixed_rho);
    finite("optimizer.tradeoff_min_dbm", optimizer.tradeoff_min_dbm);
    finite("optimizer.tradeoff_max_dbm", optimizer.tradeoff_max_dbm);
    if (!(optimizer.tradeoff_min_dbm < optimizer.tradeoff_max_dbm))
        fail("optimizer", "tradeoff_min_dbm must be below tradeoff_max_dbm");
    if (optimizer.tradeoff_points < 2)
        fail("optimizer.tradeoff_points", "must be >= 2");

    if (output.directory.empty())
        fail("output.directory", "must be non-empty");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <class E>
struct EnumName {
    E value;
    const char *name;
};

constexpr EnumName<PathLossKind> kPathLoss[] = {{PathLossKind::FreeSpace, "free_space"},
                                                {PathLossKind::UmiLos, "umi_los"}};
constexpr EnumName<Fading> kFading[] = {{Fading::LoS, "los"}, {Fading::Rayleigh, "rayleigh"}};
constexpr EnumName<ReflectivityPhase> kPhase[] = {{ReflectivityPhase::Fixed0, "fixed0"},
                                                  {ReflectivityPhase::UniformRandom, "uniform_random"}};
constexpr EnumName<RelayInterference> kRelay[] = {{RelayInterference::AsPrinted, "as_printed"},
                                                  {RelayInterference::Strict, "strict"}};
constexpr EnumName<ClutterStatistics> kClutterStats[] = {{ClutterStatistics::Gaussian, "gaussian"},
                                                         {ClutterStatistics::FixedEnvelope, "fixed_envelope"}};
constexpr EnumName<SweepScale> kScale[] = {{SweepScale::Log, "log"}, {SweepScale::Linear, "linear"}};
constexpr EnumName<OutputFormat> kFormat[] = {{OutputFormat::Csv, "csv"}, {OutputFormat::Json, "json"}};

template <class E, std::size_t M>
const char *enum_name(const EnumName<E> (&table)[M], E v)
{
    for (const auto &e : table)
        if (e.value == v)
            return e.name;
    return "?";
}

/// One JSON object; every key must be consumed before finish().
class Section {
public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            fail(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string field(const char *key) const { return path_.empty() ? key : path_ + "." + key; }

    const json *find(const char *key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void get(const char *key, double &out)
    {
        if (const json *v = find(key)) {
            if (!v->is_number())
                fail(field(key), "expected a number");
            out = v->get<double>();
        }
    }

    void get(const char *key, std::optional<double> &out)
    {
        if (const json *v = find(key)) {
            if (v->is_null()) {
                out.reset();
                return;
            }
            if (!v->is_number())
                fail(field(key), "expected a number or null");
            out = v->get<double>();
        }
    }

    void get(const char *key, int &out)
    {
        if (const json *v = find(key)) {
            if (!v->is_number_integer())
                fail(field(key), "expected an integer");
            const auto x = v->get<std::int64_t>();
            if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
                fail(field(key), "integer out of range");
            out = static_cast<int>(x);
        }
    }

    void get(const char *key, std::uint64_t &out)
    {
        if (const json *v = find(key)) {
            if (!v->is_number_unsigned())
                fail(field(key), "expected a non-negative integer");
            out = v->get<std::uint64_t>();
        }
    }

    void get(const char *key, bool &out)
    {
        if (const json *v = find(key)) {
            if (!v->is_boolean())
                fail(field(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    void get(const char *key, std::string &out)
    {
        if (const json *v = find(key)) {
            if (!v->is_string())
                fail(field(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void get(const char *key, std::vector<double> &out)
    {
        if (const json *v = find(key)) {
            if (!v->is_array())
                fail(field(key), "expected an array of numbers");
            out.clear();
            for (const auto &x : *v) {
                if (!x.is_number())
                    fail(field(key), "expected an array of numbers");
                out.push_back(x.get<double>());
            }
        }
    }

    void get(const char *key, std::vector<int> &out)
    {
        if (const json *v = find(key)) {
            if (!v->is_array())
                fail(field(key), "expected an array of integers");
            out.clear();
            for (const auto &x : *v) {
                if (!x.is_number_integer())
                    fail(field(key), "expected an array of integers");
                out.push_back(x.get<int>());
            }
        }
    }

    template <class E, std::size_t M>
    void get_enum(const char *key, const EnumName<E> (&table)[M], E &out)
    {
        if (const json *v = find(key)) {
            if (!v->is_string())
                fail(field(key), "expected a string");
            const auto s = v->get<std::string>();
            for (const auto &e : table)
                if (s == e.name) {
                    out = e.value;
                    return;
                }
            std::string allowed;
            for (const auto &e : table)
                allowed += std::string(allowed.empty() ? "" : ", ") + e.name;
            fail(field(key), "unknown value '" + s + "' (allowed: " + allowed + ")");
        }
    }

    /// Nested section; an absent key yields an empty object.
    Section child(const char *key)
    {
        static const json empty = json::object();
        const json *v = find(key);
        return Section(v ? *v : empty, field(key));
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                fail(field(it.key().c_str()), "unknown key");
    }

private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

json optional_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

} // namespace

ScenarioConfig config_from_json(const json &j)
{
    ScenarioConfig c;
    Section root(j, "");
    {
        Section s = root.child("array");
        s.get("n_antennas", c.array.n_antennas);
        s.get("carrier_freq_hz", c.array.carrier_freq_hz);
        s.get("spacing_m", c.array.spacing_m);
        s.finish();
    }
    {
        Section s = root.child("scene");
        s.get("clutter_count", c.scene.clutter_count);
        s.get("target_range_m", c.scene.target_range_m);
        s.get("target_angle_deg", c.scene.target_angle_deg);
        s.get("angle_exclusion_rad", c.scene.angle_exclusion_rad);
        s.get("rcs_scale", c.scene.rcs_scale);
        s.get_enum("reflectivity_phase", kPhase, c.scene.reflectivity_phase);
        s.get("sigma_c", c.scene.sigma_c);
        s.get("clutter_path_loss", c.scene.clutter_path_loss);
        s.get("realization", c.scene.realization);
        s.finish();
    }
    {
        Section s = root.child("path_loss");
        s.get_enum("kind", kPathLoss, c.path_loss.kind);
        s.get("bs_height_m", c.path_loss.bs_height_m);
        s.get("ut_height_m", c.path_loss.ut_height_m);
        s.finish();
    }
    {
        Section s = root.child("channels");
        s.get("relay_range_m", c.channels.relay_range_m);
        s.get("relay_angle_deg", c.channels.relay_angle_deg);
        s.get("destination_range_m", c.channels.destination_range_m);
        s.get("destination_angle_deg", c.channels.destination_angle_deg);
        s.get_enum("fading", kFading, c.channels.fading);
        s.get("noise_power_dbm", c.channels.noise_power_dbm);
        s.get("noise_var_dest_w", c.channels.noise_var_dest_w);
        s.get("noise_var_relay_w", c.channels.noise_var_relay_w);
        s.get("relay_power_dbm", c.channels.relay_power_dbm);
        s.get_enum("relay_mode", kRelay, c.channels.relay_mode);
        s.finish();
    }
    {
        Section s = root.child("power_sweep");
        s.get("min_dbm", c.power_sweep.min_dbm);
        s.get("max_dbm", c.power_sweep.max_dbm);
        s.get("points", c.power_sweep.points);
        s.get_enum("scale", kScale, c.power_sweep.scale);
        s.finish();
    }
    {
        Section s = root.child("scnr_sweep");
        s.get("antennas", c.scnr_sweep.antennas);
        s.get("carrier_ghz", c.scnr_sweep.carrier_ghz);
        s.get("realizations", c.scnr_sweep.realizations);
        s.get("rho", c.scnr_sweep.rho);
        s.finish();
    }
    {
        Section s = root.child("clutter_levels");
        s.get("light", c.clutter_levels.light);
        s.get("intense", c.clutter_levels.intense);
        s.finish();
    }
    {
        Section s = root.child("detection");
        s.get("eta", c.detection.eta);
        s.get("kappa_min", c.detection.kappa_min);
        s.get("kappa_max", c.detection.kappa_max);
        s.get("kappa_points", c.detection.kappa_points);
        s.get("powers_dbm", c.detection.powers_dbm);
        s.get("rho", c.detection.rho);
        s.get("trials", c.detection.trials);
        s.get("ci_level", c.detection.ci_level);
        s.get_enum("clutter_statistics", kClutterStats, c.detection.clutter_statistics);
        s.finish();
    }
    {
        Section s = root.child("targets");
        s.get("rate_bps_hz", c.targets.rate_bps_hz);
        s.get("pfa_max", c.targets.pfa_max);
        s.get("pd_min", c.targets.pd_min);
        s.finish();
    }
    {
        Section s = root.child("optimizer");
        s.get("p_max_w", c.optimizer.p_max_w);
        s.get("p_min_w", c.optimizer.p_min_w);
        s.get("power_points", c.optimizer.power_points);
        s.get("rho_points", c.optimizer.rho_points);
        s.get("kappa_points", c.optimizer.kappa_points);
        s.get("kappa_span", c.optimizer.kappa_span);
        s.get("tol_w", c.optimizer.tol_w);
        s.get("fixed_rho", c.optimizer.fixed_rho);
        s.get("np_threshold", c.optimizer.np_threshold);
        s.get("tradeoff_min_dbm", c.optimizer.tradeoff_min_dbm);
        s.get("tradeoff_max_dbm", c.optimizer.tradeoff_max_dbm);
        s.get("tradeoff_points", c.optimizer.tradeoff_points);
        s.finish();
    }
    {
        Section s = root.child("output");
        s.get("directory", c.output.directory);
        s.get_enum("format", kFormat, c.output.format);
        s.finish();
    }
    root.get("seed", c.seed);
    root.finish();

    c.validate();
    return c;
}

json config_to_json(const ScenarioConfig &c)
{
    json j;
    j["array"] = {{"n_antennas", c.array.n_antennas},
                  {"carrier_freq_hz", c.array.carrier_freq_hz},
                  {"spacing_m", optional_json(c.array.spacing_m)}};
    j["scene"] = {{"clutter_count", c.scene.clutter_count},
                  {"target_range_m", c.scene.target_range_m},
                  {"target_angle_deg", c.scene.target_angle_deg},
                  {"angle_exclusion_rad", c.scene.angle_exclusion_rad},
                  {"rcs_scale", c.scene.rcs_scale},
                  {"reflectivity_phase", enum_name(kPhase, c.scene.reflectivity_phase)},
                  {"sigma_c", c.scene.sigma_c},
                  {"clutter_path_loss", c.scene.clutter_path_loss},
                  {"realization", c.scene.realization}};
    j["path_loss"] = {{"kind", enum_name(kPathLoss, c.path_loss.kind)},
                      {"bs_height_m", c.path_loss.bs_height_m},
                      {"ut_height_m", c.path_loss.ut_height_m}};
    j["channels"] = {{"relay_range_m", c.channels.relay_range_m},
                     {"relay_angle_deg", c.channels.relay_angle_deg},
                     {"destination_range_m", c.channels.destination_range_m},
                     {"destination_angle_deg", c.channels.destination_angle_deg},
                     {"fading", enum_name(kFading, c.channels.fading)},
                     {"noise_power_dbm", c.channels.noise_power_dbm},
                     {"noise_var_dest_w", c.channels.noise_var_dest_w},
                     {"noise_var_relay_w", c.channels.noise_var_relay_w},
                     {"relay_power_dbm", c.channels.relay_power_dbm},
                     {"relay_mode", enum_name(kRelay, c.channels.relay_mode)}};
    j["power_sweep"] = {{"min_dbm", c.power_sweep.min_dbm},
                        {"max_dbm", c.power_sweep.max_dbm},
                        {"points", c.power_sweep.points},
                        {"scale", enum_name(kScale, c.power_sweep.scale)}};
    j["scnr_sweep"] = {{"antennas", c.scnr_sweep.antennas},
                       {"carrier_ghz", c.scnr_sweep.carrier_ghz},
                       {"realizations", c.scnr_sweep.realizations},
                       {"rho", c.scnr_sweep.rho}};
    j["clutter_levels"] = {{"light", c.clutter_levels.light}, {"intense", c.clutter_levels.intense}};
    j["detection"] = {{"eta", c.detection.eta},
                      {"kappa_min", c.detection.kappa_min},
                      {"kappa_max", c.detection.kappa_max},
                      {"kappa_points", c.detection.kappa_points},
                      {"powers_dbm", c.detection.powers_dbm},
                      {"rho", c.detection.rho},
                      {"trials", c.detection.trials},
                      {"ci_level", c.detection.ci_level},
                      {"clutter_statistics", enum_name(kClutterStats, c.detection.clutter_statistics)}};
    j["targets"] = {{"rate_bps_hz", c.targets.rate_bps_hz},
                    {"pfa_max", c.targets.pfa_max},
                    {"pd_min", c.targets.pd_min}};
    j["optimizer"] = {{"p_max_w", c.optimizer.p_max_w},
                      {"p_min_w", c.optimizer.p_min_w},
                      {"power_points", c.optimizer.power_points},
                      {"rho_points", c.optimizer.rho_points},
                      {"kappa_points", c.optimizer.kappa_points},
                      {"kappa_span", c.optimizer.kappa_span},
                      {"tol_w", c.optimizer.tol_w},
                      {"fixed_rho", optional_json(c.optimizer.fixed_rho)},
                      {"np_threshold", c.optimizer.np_threshold},
                      {"tradeoff_min_dbm", c.optimizer.tradeoff_min_dbm},
                      {"tradeoff_max_dbm", c.optimizer.tradeoff_max_dbm},
                      {"tradeoff_points", c.optimizer.tradeoff_points}};
    j["output"] = {{"directory", c.output.directory}, {"format", enum_name(kFormat, c.output.format)}};
    j["seed"] = c.seed;
    return j;
}

ScenarioConfig load_scenario(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path + ": cannot open configuration file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        return config_from_json(json::object());
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    return config_from_json(j);
}

std::string config_hash(const ScenarioConfig &cfg)
{
    json j = config_to_json(cfg);
    j.erase("output");
    const std::string canonical = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

// ---------------------------------------------------------------------------
// Scenario construction

namespace {

std::uint64_t stream_id(StreamTag tag, std::uint64_t realization)
{
    return (static_cast<std::uint64_t>(tag) << 48) ^ realization;
}

} // namespace

Scene build_scene(const ScenarioConfig &cfg, double carrier_freq_hz, double sigma_c, std::uint64_t realization)
{
    const PolarPosition target(cfg.scene.target_range_m, cfg.scene.target_angle_deg * kPi / 180.0);
    RandomStream placement = derive_stream(cfg.seed, stream_id(StreamTag::ClutterPlacement, realization));
    RandomStream phase = derive_stream(cfg.seed, stream_id(StreamTag::Reflectivity, realization));

    const cdouble alpha0 = target_reflectivity(cfg.path_loss_model(), carrier_freq_hz, target.range(),
                                               cfg.scene.rcs_scale, phase, cfg.scene.reflectivity_phase);
    Scene scene{Target{target, alpha0}, {}};
    if (cfg.scene.clutter_count > 0)
        scene.clutter = make_clutter_scene(placement, cfg.scene.clutter_count, cfg.scene.target_range_m, sigma_c,
                                           cfg.scene.angle_exclusion_rad, target.angle());
    if (cfg.scene.clutter_path_loss)
        for (auto &c : scene.clutter) {
            const double g = path_gain(cfg.path_loss_model(), carrier_freq_hz, c.position.range());
            c.amplitude_scale *= g * g;
        }
    return scene;
}

LinkScenario build_link_scenario(const ScenarioConfig &cfg, int n_antennas, double carrier_freq_hz, double sigma_c,
                                 std::uint64_t realization)
{
    const ArrayConfig array(n_antennas, carrier_freq_hz, cfg.array.spacing_m);
    const Scene scene = build_scene(cfg, carrier_freq_hz, sigma_c, realization);
    const PathLossModel pl = cfg.path_loss_model();
    const auto &ch = cfg.channels;
    const double noise_w = ch.noise_power_w();

    RandomStream fading = derive_stream(cfg.seed, stream_id(StreamTag::CommChannel, realization));
    const PolarPosition relay(ch.relay_range_m, ch.relay_angle_deg * kPi / 180.0);
    const PolarPosition dest(ch.destination_range_m, ch.destination_angle_deg * kPi / 180.0);

    ChannelSet channels;
    channels.h_sd = synthesize_comm_channel(array, dest, pl, ch.fading, fading);
    channels.h_sr = synthesize_comm_channel(array, relay, pl, ch.fading, fading);
    channels.h_rd = synthesize_scalar_channel(carrier_freq_hz, ch.relay_destination_distance_m(), pl, ch.fading, fading);
    channels.noise_var_dest = ch.noise_var_dest_w / noise_w;
    channels.noise_var_relay = ch.noise_var_relay_w / noise_w;
    channels.validate(n_antennas);

    const RadarGeometry radar = RadarGeometry::from_scene(array, scene);
    const cvec comm_direction = mrt_direction(channels.h_sd);
    const cvec radar_direction = radar.target.steering().conjugate() / std::sqrt(static_cast<double>(n_antennas));

    LinkScenario s{array,
                   std::move(channels),
                   dbm_to_watts(ch.relay_power_dbm) / noise_w,
                   ch.relay_mode,
                   radar,
                   scene.target.reflectivity,
                   comm_direction,
                   radar_direction};
    s.noise_power_w = noise_w;
    s.eta = cfg.detection.eta;
    return s;
}

LinkScenario build_link_scenario(const ScenarioConfig &cfg)
{
    return build_link_scenario(cfg, cfg.array.n_antennas, cfg.array.carrier_freq_hz, cfg.scene.sigma_c,
                               cfg.scene.realization);
}

} // namespace nfjrc
