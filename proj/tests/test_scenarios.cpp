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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "epspin/config.hpp"
#include "epspin/output.hpp"
#include "epspin/scenarios.hpp"

using namespace epspin;
namespace fs = std::filesystem;

namespace {

// Small versions of each scenario, fast enough for unit tests.
ScenarioConfig quick(Scenario s)
{
    ScenarioConfig c = defaults_for(s);
    c.system.n_sites = std::min(c.system.n_sites, 3);
    c.time.gamma_t_end = 5.0;
    c.time.n_steps = 10;
    c.scan.points = 4;
    c.disorder.n_realizations = 3;
    c.disorder.h_over_gamma = {0.0, 0.1};
    c.trajectories.n_trajectories = 20;
    c.trajectories.gamma_t_end = 1.0;
    c.trajectories.gamma_dt = 0.01;
    c.trajectories.n_records = 4;
    c.trajectories.bootstrap_resamples = 20;
    if (s == Scenario::fig5_gamma_scan) {
        c.scan.start = 0.5;
    }
    return c;
}

std::string header(const Table& t)
{
    const std::string csv = to_csv(t);
    return csv.substr(0, csv.find('\n'));
}

std::string read(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("epspin_test_" + name);
    fs::remove_all(p);
    return p;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(EPSPIN_SIMULATE_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("CSV headers are stable")
{
    CHECK(header(run_scenario(quick(Scenario::fig1_purity_scan)).table("fig1_purity_scan"))
          == "lambda_over_gamma,purity_unrotated,purity_rotated");
    CHECK(header(run_scenario(quick(Scenario::fig2_fidelity_mi)).table("fig2_fidelity_mi"))
          == "gamma_t,fidelity_rotated,fidelity_unrotated,fidelity_root_rotated,"
             "fidelity_root_unrotated,mutual_information_rotated,mutual_information_unrotated");
    CHECK(header(run_scenario(quick(Scenario::fig3_nh_vs_lme)).table("fig3_nh_vs_lme"))
          == "gamma_t,fidelity_lambda_over_gamma_0.5,fidelity_lambda_over_gamma_0.25");
    CHECK(header(run_scenario(quick(Scenario::fig4_correlator))
                     .table("fig4_correlator_lambda_over_gamma_0.5"))
          == "gamma_t,correlator_lme_re,correlator_lme_im,correlator_nh_re,correlator_nh_im");
    CHECK(header(run_scenario(quick(Scenario::fig5_gamma_scan)).table("fig5_gamma_scan"))
          == "gamma,fidelity_ness_vs_coalescent");
    CHECK(header(run_scenario(quick(Scenario::fig6_disorder_scan)).table("fig6_disorder_scan"))
          == "h_over_gamma,fidelity_mean,fidelity_stderr,correlator_mean,correlator_stderr,"
             "mutual_information_mean,mutual_information_stderr");
    CHECK(header(run_scenario(quick(Scenario::ness)).table("ness")) == "row,col,re,im");
    CHECK(header(run_scenario(quick(Scenario::trajectories)).table("trajectories"))
          == "gamma_t,trace_distance_lme,standard_error,purity,population_up_mean,"
             "population_up_lme");
    CHECK(header(run_scenario(quick(Scenario::custom_scan)).table("custom_scan"))
          == "lambda_over_gamma,purity,fidelity_coalescent,fidelity_root_coalescent,"
             "mutual_information,correlator_re,correlator_im,gap");
}

TEST_CASE("outputs are byte-identical across runs and thread counts")
{
    for (auto s : {Scenario::fig6_disorder_scan, Scenario::trajectories, Scenario::fig1_purity_scan}) {
        ScenarioConfig c = quick(s);
        c.seed = 5;
        c.threads = 1;
        const fs::path a = scratch("det_a");
        const fs::path b = scratch("det_b");
        const auto ma = write_outputs(c, run_scenario(c), a.string(), 0.0);
        c.threads = 3;
        const auto mb = write_outputs(c, run_scenario(c), b.string(), 0.0);
        REQUIRE(ma["outputs"].size() == mb["outputs"].size());
        for (const auto& entry : ma["outputs"]) {
            const std::string name = entry["file"];
            CHECK(read(a / name) == read(b / name));
        }
    }
}

TEST_CASE("manifest records the run")
{
    ScenarioConfig c = quick(Scenario::ness);
    c.seed = 17;
    const fs::path dir = scratch("manifest");
    write_outputs(c, run_scenario(c), dir.string(), 1.25);
    const auto m = nlohmann::json::parse(read(dir / "manifest.json"));
    CHECK(m["config_hash"] == config_hash(c));
    CHECK(m["seed"] == 17);
    CHECK(m["csv_schema_version"] == kCsvSchemaVersion);
    CHECK(m["library_version"] == std::string(EPSPIN_VERSION));
    CHECK(m["wall_clock_seconds"] == 1.25);
    CHECK(parse_config_text(m["config"].dump()) == c);
    for (const auto& entry : m["outputs"]) {
        const std::string name = entry["file"];
        CHECK(entry["fnv1a64"] == hex64(fnv1a64(read(dir / name))));
    }
    const auto summary = nlohmann::json::parse(read(dir / "ness.summary.json"));
    CHECK(summary["scenario"] == "ness");
    CHECK(summary["residual"].get<double>() < 1e-10);
}

TEST_CASE("jump log is written on request")
{
    ScenarioConfig c = quick(Scenario::trajectories);
    c.trajectories.write_jump_log = true;
    const ScenarioOutput out = run_scenario(c);
    REQUIRE(out.extra_files.size() == 1);
    CHECK(out.extra_files[0].first == "trajectories.jumps.jsonl");
    std::istringstream lines(out.extra_files[0].second);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.contains("trajectory"));
        CHECK(j.contains("gamma_t"));
        ++count;
    }
    CHECK(count == out.summary["total_jumps"].get<std::size_t>());
}

TEST_CASE("command-line exit codes")
{
    const fs::path dir = scratch("cli");
    fs::create_directories(dir);
    CHECK(run_cli("--list-scenarios") == 0);
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("fig9") == 2);

    const fs::path good = dir / "good.json";
    std::ofstream(good) << R"({"scenario": "ness", "system": {"n_sites": 2}})";
    CHECK(run_cli("ness --validate --config " + good.string()) == 0);
    CHECK(run_cli("ness --config " + good.string() + " --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "ness.csv"));
    CHECK(fs::exists(dir / "out" / "manifest.json"));
    CHECK(run_cli("fig1_purity_scan --validate --config " + good.string()) == 2);

    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << R"({"scenario": "ness", "system": {"n_sitez": 2}})";
    CHECK(run_cli("ness --validate --config " + bad.string()) == 2);
    CHECK(run_cli("ness --config " + (dir / "missing.json").string()) == 2);
}
