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

// simulate: run one scenario and write its CSV tables and summary next to
// a manifest.
//
//   simulate <scenario> [--config <path>] [--out <dir>] [--seed <u64>] [--threads <n>]
//   simulate <scenario> --config <path> --validate
//   simulate --list-scenarios
//
// Exit codes: 0 success, 2 configuration error, 3 numerical invariant
// violated, 1 anything else.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "epspin/config.hpp"
#include "epspin/errors.hpp"
#include "epspin/parallel.hpp"
#include "epspin/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

int run(int argc, char** argv)
{
    CLI::App app{"Open spin-system simulator: Lindblad, non-Hermitian and quantum-jump dynamics"};
    app.set_version_flag("--version", std::string(EPSPIN_VERSION));
    std::string scenario_name;
    std::string config_path;
    std::string out_dir = "output";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool validate_only = false;
    bool list = false;
    app.add_option("scenario", scenario_name, "Scenario to run");
    app.add_option("--config", config_path, "Scenario configuration (JSON with comments)");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", seed, "Master seed, overrides the config");
    app.add_option("--threads", threads, "Worker threads, overrides the config")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--validate", validate_only, "Parse and check the config, then exit");
    app.add_flag("--list-scenarios", list, "List scenario names and exit");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    if (list) {
        for (auto s : epspin::all_scenarios()) {
            std::printf("%-20s %s\n", epspin::to_string(s).c_str(), epspin::describe(s).c_str());
        }
        return 0;
    }
    if (scenario_name.empty()) {
        std::cerr << "error: a scenario name is required (see --list-scenarios)\n";
        return kExitConfig;
    }

    epspin::ScenarioConfig config;
    try {
        const epspin::Scenario scenario = epspin::scenario_from_string(scenario_name);
        config = config_path.empty() ? epspin::defaults_for(scenario)
                                     : epspin::parse_config_file(config_path);
        if (config.scenario != scenario) {
            throw epspin::ConfigError("config file is for scenario '"
                                      + epspin::to_string(config.scenario)
                                      + "' but '" + scenario_name + "' was requested");
        }
    } catch (const std::invalid_argument& e) {
        throw epspin::ConfigError(e.what());
    }
    if (seed) {
        config.seed = *seed;
    }
    if (threads) {
        config.threads = *threads;
    }
    epspin::validate(config);

    if (validate_only) {
        std::printf("%s\nconfig_hash %s\n", epspin::canonical_json(config).c_str(),
                    epspin::config_hash(config).c_str());
        return 0;
    }

    const auto start = std::chrono::steady_clock::now();
    const epspin::ScenarioOutput output = epspin::run_scenario(config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto manifest = epspin::write_outputs(config, output, out_dir, seconds);
    std::printf("%s: %zu file(s) in %s (%.2f s, %d thread(s), config %s)\n",
                scenario_name.c_str(), manifest["outputs"].size(), out_dir.c_str(), seconds,
                epspin::resolve_threads(config.threads), epspin::config_hash(config).c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const epspin::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const epspin::InvariantViolation& e) {
        std::cerr << "invariant violated [" << e.invariant() << "]: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
