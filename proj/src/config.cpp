/*
   Copyright 2026 The epspin Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "epspin/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "epspin/errors.hpp"
#include "epspin/output.hpp"

namespace epspin {

namespace {

using nlohmann::json;

struct ScenarioInfo {
    Scenario id;
    const char* name;
    const char* description;
};

const ScenarioInfo kScenarios[] = {
    {Scenario::fig1_purity_scan, "fig1_purity_scan",
     "two-level steady-state purity vs lambda/gamma, plain and rotated jump"},
    {Scenario::fig2_fidelity_mi, "fig2_fidelity_mi",
     "fidelity to the coalescent state and mutual information vs time, both jumps"},
    {Scenario::fig3_nh_vs_lme, "fig3_nh_vs_lme",
     "fidelity between non-Hermitian and Lindblad evolution vs time"},
    {Scenario::fig4_correlator, "fig4_correlator",
     "correlator Tr(rho s1+ sN-) vs time, Lindblad and non-Hermitian"},
    {Scenario::fig5_gamma_scan, "fig5_gamma_scan",
     "steady-state fidelity to the coalescent state vs gamma at fixed lambda"},
    {Scenario::fig6_disorder_scan, "fig6_disorder_scan",
     "disorder-averaged steady-state fidelity, correlator and mutual information"},
    {Scenario::ness, "ness", "steady state of one configured system"},
    {Scenario::trajectories, "trajectories",
     "quantum-jump ensemble compared with the Lindblad solution"},
    {Scenario::custom_scan, "custom_scan", "steady-state observables over one scanned parameter"},
};

// Reads one JSON object, remembering which keys were consumed so that any
// leftover key can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) {
            throw ConfigError(where() + ": expected an object");
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json* take(const std::string& key)
    {
        used_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string key_path(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    void read(const std::string& key, double& out)
    {
        if (const json* v = take(key)) {
            if (!v->is_number()) {
                throw ConfigError(key_path(key) + ": expected a number");
            }
            out = v->get<double>();
            if (!std::isfinite(out)) {
                throw ConfigError(key_path(key) + ": must be finite");
            }
        }
    }

    void read(const std::string& key, int& out)
    {
        if (const json* v = take(key)) {
            if (!v->is_number_integer()) {
                throw ConfigError(key_path(key) + ": expected an integer");
            }
            const auto value = v->get<std::int64_t>();
            if (value < INT32_MIN || value > INT32_MAX) {
                throw ConfigError(key_path(key) + ": integer out of range");
            }
            out = static_cast<int>(value);
        }
    }

    void read(const std::string& key, std::uint64_t& out)
    {
        if (const json* v = take(key)) {
            if (!v->is_number_unsigned()) {
                throw ConfigError(key_path(key) + ": expected a non-negative integer");
            }
            out = v->get<std::uint64_t>();
        }
    }

    void read(const std::string& key, bool& out)
    {
        if (const json* v = take(key)) {
            if (!v->is_boolean()) {
                throw ConfigError(key_path(key) + ": expected true or false");
            }
            out = v->get<bool>();
        }
    }

    void read(const std::string& key, std::optional<double>& out)
    {
        if (const json* v = take(key)) {
            if (v->is_null()) {
                out.reset();
                return;
            }
            double value = 0.0;
            used_.erase(key);
            read(key, value);
            out = value;
        }
    }

    void read(const std::string& key, std::vector<double>& out)
    {
        if (const json* v = take(key)) {
            if (!v->is_array()) {
                throw ConfigError(key_path(key) + ": expected an array of numbers");
            }
            std::vector<double> values;
            for (const auto& e : *v) {
                if (!e.is_number() || !std::isfinite(e.get<double>())) {
                    throw ConfigError(key_path(key) + ": expected finite numbers");
                }
                values.push_back(e.get<double>());
            }
            out = std::move(values);
        }
    }

    // Enumerations given as strings, converted by `parse`.
    template <typename T, typename Parse>
    void read_enum(const std::string& key, T& out, Parse parse)
    {
        if (const json* v = take(key)) {
            if (!v->is_string()) {
                throw ConfigError(key_path(key) + ": expected a string");
            }
            try {
                out = parse(v->get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key_path(key) + ": " + e.what());
            }
        }
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!used_.count(it.key())) {
                throw ConfigError("unknown key '" + key_path(it.key()) + "'");
            }
        }
    }

private:
    std::string where() const { return path_.empty() ? "<root>" : path_; }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

void read_system(ObjectReader& parent, SystemConfig& s)
{
    const json* j = parent.take("system");
    if (j == nullptr) {
        return;
    }
    ObjectReader r(*j, "system");
    r.read_enum("geometry", s.geometry, geometry_from_string);
    if (s.geometry == Geometry::fig_illu && !r.has("n_sites")) {
        s.n_sites = 6;
    }
    r.read("n_sites", s.n_sites);
    r.read("coupling_over_gamma", s.coupling_over_gamma);
    r.read("anisotropy_over_gamma", s.anisotropy_over_gamma);
    r.read("lambda_over_gamma", s.lambda_over_gamma);
    r.read("gamma", s.gamma);
    r.read("drive_site", s.drive_site);
    r.read("disorder_over_gamma", s.disorder_over_gamma);
    r.finish();
}

void read_time(ObjectReader& parent, TimeConfig& t)
{
    if (const json* j = parent.take("time")) {
        ObjectReader r(*j, "time");
        r.read("gamma_t_end", t.gamma_t_end);
        r.read("n_steps", t.n_steps);
        r.finish();
    }
}

void read_scan(ObjectReader& parent, ScanConfig& s)
{
    if (const json* j = parent.take("scan")) {
        ObjectReader r(*j, "scan");
        r.read_enum("parameter", s.parameter, scan_parameter_from_string);
        r.read("start", s.start);
        r.read("stop", s.stop);
        r.read("points", s.points);
        r.finish();
    }
}

void read_trajectories(ObjectReader& parent, TrajectorySection& t)
{
    if (const json* j = parent.take("trajectories")) {
        ObjectReader r(*j, "trajectories");
        r.read("gamma_dt", t.gamma_dt);
        r.read("n_trajectories", t.n_trajectories);
        r.read_enum("scheme", t.scheme, scheme_from_string);
        r.read("gamma_t_end", t.gamma_t_end);
        r.read("n_records", t.n_records);
        r.read("max_jump_probability", t.max_jump_probability);
        r.read("bootstrap_resamples", t.bootstrap_resamples);
        r.read("write_jump_log", t.write_jump_log);
        r.finish();
    }
}

void read_disorder(ObjectReader& parent, DisorderSection& d)
{
    if (const json* j = parent.take("disorder")) {
        ObjectReader r(*j, "disorder");
        r.read("n_realizations", d.n_realizations);
        r.read("h_over_gamma", d.h_over_gamma);
        r.finish();
    }
}

void read_ness(ObjectReader& parent, NessSection& n)
{
    if (const json* j = parent.take("ness")) {
        ObjectReader r(*j, "ness");
        r.read_enum("method", n.method, ness_method_from_string);
        r.finish();
    }
}

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw ConfigError(message);
    }
}

bool needs_superoperator(Scenario s)
{
    return s != Scenario::trajectories;
}

} // namespace

std::string to_string(Scenario s)
{
    for (const auto& info : kScenarios) {
        if (info.id == s) {
            return info.name;
        }
    }
    return "unknown";
}

Scenario scenario_from_string(const std::string& name)
{
    for (const auto& info : kScenarios) {
        if (name == info.name) {
            return info.id;
        }
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

const std::vector<Scenario>& all_scenarios()
{
    static const std::vector<Scenario> list = [] {
        std::vector<Scenario> v;
        for (const auto& info : kScenarios) {
            v.push_back(info.id);
        }
        return v;
    }();
    return list;
}

std::string describe(Scenario s)
{
    for (const auto& info : kScenarios) {
        if (info.id == s) {
            return info.description;
        }
    }
    return "";
}

std::string to_string(InitialState s)
{
    switch (s) {
    case InitialState::all_down:
        return "all_down";
    case InitialState::all_up:
        return "all_up";
    case InitialState::coalescent:
        return "coalescent";
    }
    return "unknown";
}

InitialState initial_state_from_string(const std::string& name)
{
    if (name == "all_down") {
        return InitialState::all_down;
    }
    if (name == "all_up") {
        return InitialState::all_up;
    }
    if (name == "coalescent") {
        return InitialState::coalescent;
    }
    throw std::invalid_argument("unknown initial state '" + name + "'");
}

std::string to_string(ScanParameter p)
{
    switch (p) {
    case ScanParameter::lambda_over_gamma:
        return "lambda_over_gamma";
    case ScanParameter::coupling_over_gamma:
        return "coupling_over_gamma";
    case ScanParameter::disorder_over_gamma:
        return "disorder_over_gamma";
    case ScanParameter::gamma:
        return "gamma";
    }
    return "unknown";
}

ScanParameter scan_parameter_from_string(const std::string& name)
{
    for (auto p : {ScanParameter::lambda_over_gamma, ScanParameter::coupling_over_gamma,
                   ScanParameter::disorder_over_gamma, ScanParameter::gamma}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw std::invalid_argument("unknown scan parameter '" + name + "'");
}

std::string to_string(NessMethod m)
{
    switch (m) {
    case NessMethod::kernel_solve:
        return "kernel_solve";
    case NessMethod::sparse_lu:
        return "sparse_lu";
    case NessMethod::spectrum:
        break;
    }
    return "spectrum";
}

NessMethod ness_method_from_string(const std::string& name)
{
    if (name == "spectrum") {
        return NessMethod::spectrum;
    }
    if (name == "kernel_solve") {
        return NessMethod::kernel_solve;
    }
    if (name == "sparse_lu") {
        return NessMethod::sparse_lu;
    }
    throw std::invalid_argument("unknown steady-state method '" + name + "'");
}

ScenarioConfig defaults_for(Scenario s)
{
    ScenarioConfig c;
    c.scenario = s;
    switch (s) {
    case Scenario::fig1_purity_scan:
        c.system.n_sites = 1;
        c.system.coupling_over_gamma = 0.0;
        c.scan = {ScanParameter::lambda_over_gamma, 0.0, 3.0, 61};
        break;
    case Scenario::fig2_fidelity_mi:
        break;
    case Scenario::fig3_nh_vs_lme:
        c.lambda_over_gamma_values = {0.5, 0.25};
        break;
    case Scenario::fig4_correlator:
        c.lambda_over_gamma_values = {2.0 / 3.0, 0.5, 0.25};
        break;
    case Scenario::fig5_gamma_scan:
        c.scan = {ScanParameter::gamma, 0.1, 4.0, 40};
        break;
    case Scenario::fig6_disorder_scan:
        c.system.coupling_over_gamma = 1.0;
        c.ness.method = NessMethod::kernel_solve;
        break;
    case Scenario::ness:
        break;
    case Scenario::trajectories:
        c.system.n_sites = 1;
        c.system.coupling_over_gamma = 0.0;
        c.system.lambda_over_gamma = 1.0;
        c.jump_rotation = JumpRotation::none;
        break;
    case Scenario::custom_scan:
        c.scan = {ScanParameter::lambda_over_gamma, 0.05, 2.0, 40};
        break;
    }
    return c;
}

ScenarioConfig parse_config_text(const std::string& text)
{
    json root;
    try {
        root = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    ObjectReader r(root, "");
    const json* name = r.take("scenario");
    if (name == nullptr || !name->is_string()) {
        throw ConfigError("scenario: required string key is missing");
    }
    ScenarioConfig c;
    try {
        c = defaults_for(scenario_from_string(name->get<std::string>()));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    r.read("seed", c.seed);
    r.read("threads", c.threads);
    read_system(r, c.system);
    r.read_enum("jump_rotation", c.jump_rotation, rotation_from_string);
    r.read_enum("initial_state", c.initial_state, initial_state_from_string);
    read_time(r, c.time);
    read_scan(r, c.scan);
    r.read("lambda_over_gamma_values", c.lambda_over_gamma_values);
    read_trajectories(r, c.trajectories);
    read_disorder(r, c.disorder);
    read_ness(r, c.ness);
    r.finish();
    validate(c);
    return c;
}

ScenarioConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

nlohmann::json to_json(const ScenarioConfig& c)
{
    json j;
    j["scenario"] = to_string(c.scenario);
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["system"] = {
        {"geometry", to_string(c.system.geometry)},
        {"n_sites", c.system.n_sites},
        {"coupling_over_gamma", c.system.coupling_over_gamma},
        {"anisotropy_over_gamma",
         c.system.anisotropy_over_gamma ? json(*c.system.anisotropy_over_gamma) : json(nullptr)},
        {"lambda_over_gamma", c.system.lambda_over_gamma},
        {"gamma", c.system.gamma},
        {"drive_site", c.system.drive_site},
        {"disorder_over_gamma", c.system.disorder_over_gamma},
    };
    j["jump_rotation"] = to_string(c.jump_rotation);
    j["initial_state"] = to_string(c.initial_state);
    j["time"] = {{"gamma_t_end", c.time.gamma_t_end}, {"n_steps", c.time.n_steps}};
    j["scan"] = {{"parameter", to_string(c.scan.parameter)},
                 {"start", c.scan.start},
                 {"stop", c.scan.stop},
                 {"points", c.scan.points}};
    j["lambda_over_gamma_values"] = c.lambda_over_gamma_values;
    j["trajectories"] = {
        {"gamma_dt", c.trajectories.gamma_dt},
        {"n_trajectories", c.trajectories.n_trajectories},
        {"scheme", to_string(c.trajectories.scheme)},
        {"gamma_t_end", c.trajectories.gamma_t_end},
        {"n_records", c.trajectories.n_records},
        {"max_jump_probability", c.trajectories.max_jump_probability},
        {"bootstrap_resamples", c.trajectories.bootstrap_resamples},
        {"write_jump_log", c.trajectories.write_jump_log},
    };
    j["disorder"] = {{"n_realizations", c.disorder.n_realizations},
                     {"h_over_gamma", c.disorder.h_over_gamma}};
    j["ness"] = {{"method", to_string(c.ness.method)}};
    return j;
}

std::string canonical_json(const ScenarioConfig& c)
{
    // nlohmann objects are key-sorted and doubles print in shortest
    // round-trip form, so dump() is canonical for a given config.
    return to_json(c).dump();
}

std::string config_hash(const ScenarioConfig& c)
{
    return hex64(fnv1a64(canonical_json(c)));
}

void validate(const ScenarioConfig& c)
{
    const auto& s = c.system;
    require(s.n_sites >= 1 && s.n_sites <= kMaxSites,
            "system.n_sites: must be in [1, " + std::to_string(kMaxSites) + "]");
    if (needs_superoperator(c.scenario)) {
        require(s.n_sites <= kMaxSuperoperatorSites,
                "system.n_sites: scenario " + to_string(c.scenario) + " builds a Liouvillian, "
                    + "at most " + std::to_string(kMaxSuperoperatorSites) + " sites");
    }
    require(s.geometry != Geometry::fig_illu || s.n_sites == 6,
            "system.n_sites: the fig_illu geometry has exactly 6 sites");
    require(s.drive_site >= 1 && s.drive_site <= s.n_sites,
            "system.drive_site: must be in [1, n_sites]");
    require(s.gamma > 0.0, "system.gamma: must be positive");
    require(s.lambda_over_gamma >= 0.0, "system.lambda_over_gamma: must be >= 0");
    require(s.disorder_over_gamma >= 0.0, "system.disorder_over_gamma: must be >= 0");
    require(c.threads >= 0, "threads: must be >= 0");
    require(c.time.gamma_t_end > 0.0, "time.gamma_t_end: must be positive");
    require(c.time.n_steps >= 1, "time.n_steps: must be positive");
    require(c.scan.points >= 1, "scan.points: must be positive");
    require(c.scan.points == 1 || c.scan.stop > c.scan.start, "scan.stop: must exceed scan.start");
    if (c.scenario == Scenario::fig5_gamma_scan) {
        require(c.scan.parameter == ScanParameter::gamma,
                "scan.parameter: fig5_gamma_scan scans gamma");
    }
    if (c.scenario == Scenario::fig1_purity_scan) {
        require(c.scan.parameter == ScanParameter::lambda_over_gamma,
                "scan.parameter: fig1_purity_scan scans lambda_over_gamma");
        require(c.scan.start >= 0.0, "scan.start: lambda_over_gamma must be >= 0");
    }
    if (c.scan.parameter == ScanParameter::gamma) {
        require(c.scan.start > 0.0, "scan.start: gamma must be positive");
    }
    if (c.scenario == Scenario::fig3_nh_vs_lme || c.scenario == Scenario::fig4_correlator) {
        require(!c.lambda_over_gamma_values.empty(), "lambda_over_gamma_values: must be nonempty");
        for (double v : c.lambda_over_gamma_values) {
            require(v >= 0.0, "lambda_over_gamma_values: entries must be >= 0");
        }
    }
    const auto& t = c.trajectories;
    require(t.gamma_dt > 0.0, "trajectories.gamma_dt: must be positive");
    require(t.n_trajectories >= 2, "trajectories.n_trajectories: must be >= 2");
    require(t.gamma_t_end > 0.0, "trajectories.gamma_t_end: must be positive");
    require(t.n_records >= 1, "trajectories.n_records: must be positive");
    require(t.max_jump_probability > 0.0 && t.max_jump_probability <= 0.05,
            "trajectories.max_jump_probability: must be in (0, 0.05]");
    require(t.bootstrap_resamples >= 0, "trajectories.bootstrap_resamples: must be >= 0");
    require(c.disorder.n_realizations >= 1, "disorder.n_realizations: must be positive");
    for (double h : c.disorder.h_over_gamma) {
        require(h >= 0.0, "disorder.h_over_gamma: entries must be >= 0");
    }
    if (c.scenario == Scenario::fig6_disorder_scan) {
        require(!c.disorder.h_over_gamma.empty(), "disorder.h_over_gamma: must be nonempty");
    }
}

SystemSpec system_spec(const SystemConfig& s, std::uint64_t disorder_seed,
                       std::uint64_t realization)
{
    SystemSpec spec = make_preset(s.geometry, s.n_sites, s.coupling_over_gamma * s.gamma,
                                  s.lambda_over_gamma * s.gamma, s.gamma, s.drive_site);
    if (s.anisotropy_over_gamma) {
        for (auto& [pair, delta] : spec.anisotropy) {
            delta = *s.anisotropy_over_gamma * s.gamma;
        }
    }
    spec.disorder_bound = s.disorder_over_gamma * s.gamma;
    spec.disorder_seed = disorder_seed;
    spec.disorder_realization = realization;
    return spec;
}

} // namespace epspin
