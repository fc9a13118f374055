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

#pragma once

// Scenario configuration: a JSON document (with // and /* */ comments
// allowed) parsed strictly against a fixed schema. Energies are given in
// units of the reference dissipation rate and carry an `_over_gamma`
// suffix; times carry a `gamma_` prefix (gamma_t, gamma_dt).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "epspin/liouvillian.hpp"
#include "epspin/model.hpp"
#include "epspin/trajectories.hpp"

namespace epspin {

enum class Scenario {
    fig1_purity_scan,
    fig2_fidelity_mi,
    fig3_nh_vs_lme,
    fig4_correlator,
    fig5_gamma_scan,
    fig6_disorder_scan,
    ness,
    trajectories,
    custom_scan,
};

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);
const std::vector<Scenario>& all_scenarios();
/// One-line description for --list-scenarios.
std::string describe(Scenario s);

enum class InitialState { all_down, all_up, coalescent };
std::string to_string(InitialState s);
InitialState initial_state_from_string(const std::string& name);

/// Which quantity a custom_scan sweeps.
enum class ScanParameter { lambda_over_gamma, coupling_over_gamma, disorder_over_gamma, gamma };
std::string to_string(ScanParameter p);
ScanParameter scan_parameter_from_string(const std::string& name);

std::string to_string(NessMethod m);
NessMethod ness_method_from_string(const std::string& name);

struct SystemConfig {
    Geometry geometry = Geometry::chain;
    int n_sites = 4;
    double coupling_over_gamma = 2.0; ///< J / gamma
    /// Delta / gamma for every bond; unset means the SU(2) point Delta = -J.
    std::optional<double> anisotropy_over_gamma;
    double lambda_over_gamma = 0.5;
    double gamma = 1.0; ///< reference rate; sets the unit of everything else
    int drive_site = 1;
    double disorder_over_gamma = 0.0;
    bool operator==(const SystemConfig&) const = default;
};

struct TimeConfig {
    double gamma_t_end = 1000.0;
    int n_steps = 2000;
    bool operator==(const TimeConfig&) const = default;
};

struct ScanConfig {
    ScanParameter parameter = ScanParameter::lambda_over_gamma;
    double start = 0.0;
    double stop = 3.0;
    int points = 61;
    bool operator==(const ScanConfig&) const = default;
};

struct TrajectorySection {
    double gamma_dt = 1e-3;
    int n_trajectories = 1000;
    JumpScheme scheme = JumpScheme::norm_waiting_time;
    double gamma_t_end = 20.0;
    int n_records = 20;
    double max_jump_probability = 0.05;
    int bootstrap_resamples = 200;
    bool write_jump_log = false;
    bool operator==(const TrajectorySection&) const = default;
};

struct DisorderSection {
    int n_realizations = 1000;
    std::vector<double> h_over_gamma{0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0};
    bool operator==(const DisorderSection&) const = default;
};

struct NessSection {
    NessMethod method = NessMethod::spectrum;
    bool operator==(const NessSection&) const = default;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::ness;
    std::uint64_t seed = 0;
    int threads = 0;
    SystemConfig system;
    JumpRotation jump_rotation = JumpRotation::local_x_half_pi;
    InitialState initial_state = InitialState::all_down;
    TimeConfig time;
    ScanConfig scan;
    std::vector<double> lambda_over_gamma_values; ///< fig3 and fig4 curves
    TrajectorySection trajectories;
    DisorderSection disorder;
    NessSection ness;
    bool operator==(const ScenarioConfig&) const = default;
};

/// Default parameters for each scenario (N = 4 chain, lambda/gamma = 0.5,
/// J/gamma = 2; J/gamma = 1 and 1000 realizations for the disorder scan).
ScenarioConfig defaults_for(Scenario s);

/// Strict parse: any unknown key or ill-typed value throws ConfigError
/// naming the offending key path. Comments are stripped by the
/// JSON reader before parsing.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

/// Every field, keys sorted, compact separators, shortest round-trip numbers.
nlohmann::json to_json(const ScenarioConfig& c);
std::string canonical_json(const ScenarioConfig& c);

/// FNV-1a 64-bit hash of canonical_json, as 16 hex digits.
std::string config_hash(const ScenarioConfig& c);

/// Throws ConfigError on inconsistent combinations (site counts, ranges).
void validate(const ScenarioConfig& c);

/// SystemSpec in absolute units for the configured reference gamma, with
/// the drive on the preset's designated site.
SystemSpec system_spec(const SystemConfig& s, std::uint64_t disorder_seed = 0,
                       std::uint64_t realization = 0);

} // namespace epspin
