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

// Scenario runner: turns a ScenarioConfig into data tables with a JSON
// summary. Writing them to disk adds a manifest with per-file checksums.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "epspin/config.hpp"
#include "epspin/density_matrix.hpp"
#include "epspin/output.hpp"

namespace epspin {

struct ScenarioOutput {
    /// (file stem, table); each becomes <stem>.csv
    std::vector<std::pair<std::string, Table>> tables;
    /// (file name, content) for auxiliary files such as jump logs
    std::vector<std::pair<std::string, std::string>> extra_files;
    nlohmann::json summary;

    const Table& table(const std::string& stem) const;
};

/// Runs the configured scenario. Throws ConfigError for unusable settings
/// and InvariantViolation for numerical failures.
ScenarioOutput run_scenario(const ScenarioConfig& config);

/// Writes every table with its summary and manifest.json into `out_dir`
/// (created if missing) and returns the manifest.
nlohmann::json write_outputs(const ScenarioConfig& config, const ScenarioOutput& output,
                             const std::string& out_dir, double wall_clock_seconds);

/// Initial state of the time-evolution scenarios.
DensityMatrix initial_density(InitialState s, int n_sites);

/// Steady state with the configured method.
DensityMatrix steady_state(const SystemSpec& spec, JumpRotation rotation, NessMethod method);

/// `points` evenly spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int points);

/// Copy of `s` with one parameter set. Scanning gamma keeps every absolute
/// energy (lambda, J, Delta, disorder bound) fixed at its value for the
/// original reference rate.
SystemConfig with_parameter(SystemConfig s, ScanParameter p, double value);

} // namespace epspin
