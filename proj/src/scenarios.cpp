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

#include "epspin/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "epspin/errors.hpp"
#include "epspin/liouvillian.hpp"
#include "epspin/observables.hpp"
#include "epspin/parallel.hpp"
#include "epspin/propagate.hpp"
#include "epspin/trajectories.hpp"

namespace epspin {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// JSON has no NaN; missing values are written as null.
json number(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

JumpRotation rotated(JumpRotation configured)
{
    return configured == JumpRotation::none ? JumpRotation::local_x_half_pi : configured;
}

Superoperator liouvillian_for(const SystemSpec& spec, JumpRotation rotation)
{
    return build_liouvillian(spec, jumps_from_spec(spec, rotation));
}

NessResult ness_for(const SystemSpec& spec, JumpRotation rotation, NessMethod method)
{
    NessOptions opts;
    opts.method = method;
    if (method == NessMethod::sparse_lu) {
        const auto jumps = jumps_from_spec(spec, rotation);
        return ness_sparse(build_effective_nonhermitian(spec, jumps),
                           realize_jumps(jumps, spec.n_sites), opts);
    }
    return ness(liouvillian_for(spec, rotation), opts);
}

TimeGrid time_grid(const TimeConfig& t)
{
    return TimeGrid::uniform(0.0, t.gamma_t_end, t.n_steps);
}

// Index of the first sample at or after time t.
std::size_t index_at(const std::vector<double>& times, double t)
{
    const auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12);
    return it == times.end() ? times.size() - 1 : static_cast<std::size_t>(it - times.begin());
}

double late_amplitude(const std::vector<double>& times, const std::vector<double>& values,
                      double from)
{
    const std::size_t k0 = index_at(times, from);
    const auto [lo, hi] = std::minmax_element(values.begin() + static_cast<long>(k0), values.end());
    return *hi - *lo;
}

struct MeanError {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Index-ordered sums keep the result independent of the thread count.
MeanError mean_and_error(const std::vector<double>& x)
{
    MeanError r;
    const double n = static_cast<double>(x.size());
    for (double v : x) {
        r.mean += v;
    }
    r.mean /= n;
    if (x.size() > 1) {
        double ss = 0.0;
        for (double v : x) {
            ss += (v - r.mean) * (v - r.mean);
        }
        r.stderr_ = std::sqrt(ss / (n - 1.0) / n);
    }
    return r;
}

ScenarioOutput fig1_purity_scan(const ScenarioConfig& c)
{
    const auto values = linspace(c.scan.start, c.scan.stop, c.scan.points);
    std::vector<std::vector<double>> rows(values.size());
    const JumpRotation rot = rotated(c.jump_rotation);
    parallel_for(values.size(), c.threads, [&](std::size_t k) {
        SystemConfig s = c.system;
        s.lambda_over_gamma = values[k];
        const SystemSpec spec = system_spec(s, c.seed);
        rows[k] = {values[k], purity(steady_state(spec, JumpRotation::none, c.ness.method)),
                   purity(steady_state(spec, rot, c.ness.method))};
    });
    Table t{{"lambda_over_gamma", "purity_unrotated", "purity_rotated"}, {}};
    for (auto& r : rows) {
        t.add_row(std::move(r));
    }

    const auto x = t.column("lambda_over_gamma");
    const auto p_rot = t.column("purity_rotated");
    const auto p_un = t.column("purity_unrotated");
    double min_rot = kNaN;
    double argmin_rot = kNaN;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] > 0.0 && x[k] < 0.5 && !(p_rot[k] >= min_rot)) {
            min_rot = p_rot[k];
            argmin_rot = x[k];
        }
    }
    bool monotone = true;
    for (std::size_t k = 1; k < p_un.size(); ++k) {
        monotone = monotone && p_un[k] <= p_un[k - 1] + 1e-12;
    }
    const std::size_t half = std::min_element(x.begin(), x.end(),
                                              [](double a, double b) {
                                                  return std::abs(a - 0.5) < std::abs(b - 0.5);
                                              })
                             - x.begin();
    ScenarioOutput out;
    out.summary = {
        {"purity_unrotated_last", p_un.back()},
        {"unrotated_monotone_decreasing", monotone},
        {"purity_rotated_near_half", p_rot[half]},
        {"lambda_over_gamma_near_half", x[half]},
        {"purity_rotated_min_below_half", number(min_rot)},
        {"argmin_rotated_below_half", number(argmin_rot)},
    };
    out.tables.emplace_back("fig1_purity_scan", std::move(t));
    return out;
}

ScenarioOutput fig2_fidelity_mi(const ScenarioConfig& c)
{
    const SystemSpec spec = system_spec(c.system, c.seed);
    const int n = spec.n_sites;
    const DensityMatrix rho0 = initial_density(c.initial_state, n);
    const DensityMatrix rho_c = DensityMatrix::from_ket(coalescent_state(n));
    const TimeGrid grid = time_grid(c.time);
    const JumpRotation variants[2] = {rotated(c.jump_rotation), JumpRotation::none};
    std::vector<DensityMatrix> series[2];
    parallel_for(2, c.threads, [&](std::size_t v) {
        series[v] = evolve_lme(rho0, liouvillian_for(spec, variants[v]), grid);
    });

    const bool bipartite = n >= 2;
    const Partition part = bipartite ? Partition(n, {c.system.drive_site}) : Partition(2, {1});
    Table t{{"gamma_t", "fidelity_rotated", "fidelity_unrotated", "fidelity_root_rotated",
             "fidelity_root_unrotated", "mutual_information_rotated",
             "mutual_information_unrotated"},
            {}};
    std::vector<std::vector<double>> rows(grid.size());
    parallel_for(grid.size(), c.threads, [&](std::size_t k) {
        std::vector<double> row{grid.times()[k]};
        double root[2];
        double mi[2];
        for (int v = 0; v < 2; ++v) {
            root[v] = uhlmann_fidelity_root(series[v][k], rho_c);
            mi[v] = bipartite ? mutual_information(series[v][k], part) : 0.0;
        }
        rows[k] = {grid.times()[k], root[0] * root[0], root[1] * root[1], root[0], root[1],
                   mi[0], mi[1]};
    });
    for (auto& r : rows) {
        t.add_row(std::move(r));
    }

    const auto& times = grid.times();
    const std::size_t mid = index_at(times, times.back() / 2.0);
    json summary;
    const char* names[2] = {"rotated", "unrotated"};
    for (int v = 0; v < 2; ++v) {
        const auto mi = t.column(std::string("mutual_information_") + names[v]);
        const auto peak = static_cast<std::size_t>(std::max_element(mi.begin(), mi.end()) - mi.begin());
        const double min_after_peak = *std::min_element(mi.begin() + static_cast<long>(peak), mi.end());
        const double change = max_abs(series[v].back().matrix() - series[v][mid].matrix());
        summary[names[v]] = {
            {"fidelity_last", t.column(std::string("fidelity_") + names[v]).back()},
            {"fidelity_root_last", t.column(std::string("fidelity_root_") + names[v]).back()},
            {"mutual_information_last", mi.back()},
            {"mutual_information_max", mi[peak]},
            {"mutual_information_min_after_max", min_after_peak},
            {"converged", change <= 1e-6},
            {"change_since_half_time", change},
        };
    }
    summary["fidelity_initial"] = t.rows.front()[1];
    summary["fidelity_root_initial"] = t.rows.front()[3];
    ScenarioOutput out;
    out.summary = std::move(summary);
    out.tables.emplace_back("fig2_fidelity_mi", std::move(t));
    return out;
}

// Lindblad (rotated jump) and renormalized non-Hermitian series for one
// lambda/gamma ratio.
struct PairedSeries {
    std::vector<DensityMatrix> lme;
    std::vector<DensityMatrix> nh;
};

PairedSeries paired_series(const ScenarioConfig& c, double ratio, const TimeGrid& grid)
{
    SystemConfig s = c.system;
    s.lambda_over_gamma = ratio;
    const SystemSpec spec = system_spec(s, c.seed);
    const auto jumps = jumps_from_spec(spec, rotated(c.jump_rotation));
    const DensityMatrix rho0 = initial_density(c.initial_state, spec.n_sites);
    PairedSeries p;
    p.lme = evolve_lme(rho0, build_liouvillian(spec, jumps), grid);
    p.nh = evolve_nonhermitian(rho0, build_effective_nonhermitian(spec, jumps), grid);
    return p;
}

ScenarioOutput fig3_nh_vs_lme(const ScenarioConfig& c)
{
    const TimeGrid grid = time_grid(c.time);
    const auto& ratios = c.lambda_over_gamma_values;
    std::vector<std::vector<double>> fid(ratios.size());
    parallel_for(ratios.size(), c.threads, [&](std::size_t r) {
        const PairedSeries p = paired_series(c, ratios[r], grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            fid[r].push_back(uhlmann_fidelity(p.nh[k], p.lme[k]));
        }
    });
    Table t{{"gamma_t"}, {}};
    for (double r : ratios) {
        t.columns.push_back("fidelity_lambda_over_gamma_" + label(r));
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::vector<double> row{grid.times()[k]};
        for (const auto& f : fid) {
            row.push_back(f[k]);
        }
        t.add_row(std::move(row));
    }
    json terminal = json::array();
    for (std::size_t r = 0; r < ratios.size(); ++r) {
        terminal.push_back({{"lambda_over_gamma", ratios[r]}, {"fidelity_last", fid[r].back()}});
    }
    ScenarioOutput out;
    out.summary = {{"curves", terminal}};
    out.tables.emplace_back("fig3_nh_vs_lme", std::move(t));
    return out;
}

ScenarioOutput fig4_correlator(const ScenarioConfig& c)
{
    const TimeGrid grid = time_grid(c.time);
    const auto& ratios = c.lambda_over_gamma_values;
    const int n = c.system.n_sites;
    std::vector<Table> tables(ratios.size());
    parallel_for(ratios.size(), c.threads, [&](std::size_t r) {
        const PairedSeries p = paired_series(c, ratios[r], grid);
        Table t{{"gamma_t", "correlator_lme_re", "correlator_lme_im", "correlator_nh_re",
                 "correlator_nh_im"},
                {}};
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Complex cl = correlator(p.lme[k], 1, n);
            const Complex cn = correlator(p.nh[k], 1, n);
            t.add_row({grid.times()[k], cl.real(), cl.imag(), cn.real(), cn.imag()});
        }
        tables[r] = std::move(t);
    });
    ScenarioOutput out;
    json curves = json::array();
    const double late = 0.8 * c.time.gamma_t_end;
    for (std::size_t r = 0; r < ratios.size(); ++r) {
        const auto times = tables[r].column("gamma_t");
        const auto cl = tables[r].column("correlator_lme_re");
        const auto cn = tables[r].column("correlator_nh_re");
        curves.push_back({{"lambda_over_gamma", ratios[r]},
                          {"correlator_lme_last", cl.back()},
                          {"correlator_nh_last", cn.back()},
                          {"late_amplitude_lme", late_amplitude(times, cl, late)},
                          {"late_amplitude_nh", late_amplitude(times, cn, late)}});
        out.tables.emplace_back("fig4_correlator_lambda_over_gamma_" + label(ratios[r]),
                                std::move(tables[r]));
    }
    out.summary = {{"curves", curves}, {"late_window_start_gamma_t", late}};
    return out;
}

ScenarioOutput fig5_gamma_scan(const ScenarioConfig& c)
{
    const auto values = linspace(c.scan.start, c.scan.stop, c.scan.points);
    const DensityMatrix rho_c = DensityMatrix::from_ket(coalescent_state(c.system.n_sites));
    std::vector<double> fid(values.size());
    parallel_for(values.size(), c.threads, [&](std::size_t k) {
        const SystemConfig s = with_parameter(c.system, ScanParameter::gamma, values[k]);
        fid[k] = uhlmann_fidelity(
            steady_state(system_spec(s, c.seed), rotated(c.jump_rotation), c.ness.method), rho_c);
    });
    Table t{{"gamma", "fidelity_ness_vs_coalescent"}, {}};
    for (std::size_t k = 0; k < values.size(); ++k) {
        t.add_row({values[k] * c.system.gamma, fid[k]});
    }
    const auto best = static_cast<std::size_t>(std::max_element(fid.begin(), fid.end()) - fid.begin());
    ScenarioOutput out;
    out.summary = {{"lambda", c.system.lambda_over_gamma * c.system.gamma},
                   {"argmax_gamma", values[best] * c.system.gamma},
                   {"peak_fidelity", fid[best]},
                   {"grid_step", values.size() > 1 ? (values[1] - values[0]) * c.system.gamma : 0.0}};
    out.tables.emplace_back("fig5_gamma_scan", std::move(t));
    return out;
}

ScenarioOutput fig6_disorder_scan(const ScenarioConfig& c)
{
    const int n = c.system.n_sites;
    const DensityMatrix rho_c = DensityMatrix::from_ket(coalescent_state(n));
    const Partition part(n, {c.system.drive_site});
    const auto& hs = c.disorder.h_over_gamma;
    const auto m = static_cast<std::size_t>(c.disorder.n_realizations);
    Table t{{"h_over_gamma", "fidelity_mean", "fidelity_stderr", "correlator_mean",
             "correlator_stderr", "mutual_information_mean", "mutual_information_stderr"},
            {}};
    json points = json::array();
    for (double h : hs) {
        std::vector<double> f(m), corr(m), mi(m);
        parallel_for(m, c.threads, [&](std::size_t r) {
            SystemConfig s = c.system;
            s.disorder_over_gamma = h;
            const DensityMatrix rho = steady_state(system_spec(s, c.seed, r),
                                                   rotated(c.jump_rotation), c.ness.method);
            f[r] = uhlmann_fidelity(rho, rho_c);
            corr[r] = correlator(rho, 1, n).real();
            mi[r] = mutual_information(rho, part);
        });
        const MeanError ef = mean_and_error(f);
        const MeanError ec = mean_and_error(corr);
        const MeanError ei = mean_and_error(mi);
        t.add_row({h, ef.mean, ef.stderr_, ec.mean, ec.stderr_, ei.mean, ei.stderr_});
        points.push_back({{"h_over_gamma", h}, {"fidelity_mean", ef.mean}});
    }
    ScenarioOutput out;
    out.summary = {{"n_realizations", c.disorder.n_realizations}, {"points", points}};
    out.tables.emplace_back("fig6_disorder_scan", std::move(t));
    return out;
}

ScenarioOutput ness_scenario(const ScenarioConfig& c)
{
    const SystemSpec spec = system_spec(c.system, c.seed);
    const int n = spec.n_sites;
    const NessResult r = ness_for(spec, c.jump_rotation, c.ness.method);
    const DensityMatrix rho_c = DensityMatrix::from_ket(coalescent_state(n));
    Table t{{"row", "col", "re", "im"}, {}};
    for (Eigen::Index i = 0; i < r.rho.dim(); ++i) {
        for (Eigen::Index j = 0; j < r.rho.dim(); ++j) {
            t.add_row({static_cast<double>(i), static_cast<double>(j), r.rho(i, j).real(),
                       r.rho(i, j).imag()});
        }
    }
    const Complex corr = n >= 2 ? correlator(r.rho, 1, n) : Complex{kNaN, kNaN};
    ScenarioOutput out;
    out.summary = {
        {"purity", purity(r.rho)},
        {"fidelity_coalescent", uhlmann_fidelity(r.rho, rho_c)},
        {"fidelity_root_coalescent", uhlmann_fidelity_root(r.rho, rho_c)},
        {"mutual_information", number(n >= 2 ? mutual_information(r.rho, Partition(n, {c.system.drive_site})) : kNaN)},
        {"correlator_re", number(corr.real())},
        {"correlator_im", number(corr.imag())},
        {"residual", r.residual},
        {"gap", number(r.gap)},
        {"magnetization_y", magnetization(r.rho, Axis::y)},
        {"magnetization_z", magnetization(r.rho, Axis::z)},
    };
    out.tables.emplace_back("ness", std::move(t));
    return out;
}

ScenarioOutput trajectories_scenario(const ScenarioConfig& c)
{
    const SystemSpec spec = system_spec(c.system, c.seed);
    const int n = spec.n_sites;
    const auto jumps = jumps_from_spec(spec, c.jump_rotation);
    const auto& ts = c.trajectories;
    TrajectoryConfig cfg;
    cfg.dt = ts.gamma_dt / c.system.gamma;
    cfg.n_trajectories = ts.n_trajectories;
    cfg.seed = c.seed;
    cfg.scheme = ts.scheme;
    cfg.max_jump_probability = ts.max_jump_probability;
    cfg.threads = c.threads;
    // Record times are whole multiples of dt: step counts first, then times.
    const auto total_steps = static_cast<std::int64_t>(std::llround(ts.gamma_t_end / ts.gamma_dt));
    for (int k = 1; k <= ts.n_records; ++k) {
        const std::int64_t step = total_steps * k / ts.n_records;
        cfg.record_times.push_back(static_cast<double>(step) * cfg.dt);
    }
    const Ket psi0 = [&] {
        switch (c.initial_state) {
        case InitialState::all_up:
            return all_up(n);
        case InitialState::coalescent:
            return coalescent_state(n);
        case InitialState::all_down:
            break;
        }
        return all_down(n);
    }();
    TrajectorySimulator sim(build_effective_nonhermitian(spec, jumps), realize_jumps(jumps, n), cfg);
    const auto records = sim.run_ensemble(psi0);
    const EnsembleAverage avg = ensemble_average(records, {ts.bootstrap_resamples, c.seed ^ 0xb0075eedULL});

    std::vector<DensityMatrix> ref;
    if (n <= kMaxSuperoperatorSites) {
        ref = evolve_lme(DensityMatrix::from_ket(psi0), build_liouvillian(spec, jumps),
                         TimeGrid::from_times(cfg.record_times));
    }
    const Operator pop = site_operator(SpinKind::plus, c.system.drive_site, n)
                         * site_operator(SpinKind::minus, c.system.drive_site, n);
    Table t{{"gamma_t", "trace_distance_lme", "standard_error", "purity", "population_up_mean",
             "population_up_lme"},
            {}};
    double max_ratio = 0.0;
    double max_distance = 0.0;
    for (std::size_t k = 0; k < avg.times.size(); ++k) {
        const double d = ref.empty() ? kNaN : trace_distance(avg.rho[k], ref[k]);
        if (!ref.empty()) {
            max_distance = std::max(max_distance, d);
            max_ratio = std::max(max_ratio, d / avg.standard_error[k]);
        }
        t.add_row({avg.times[k] * c.system.gamma, d, avg.standard_error[k], purity(avg.rho[k]),
                   avg.rho[k].expectation(pop).real(),
                   ref.empty() ? kNaN : ref[k].expectation(pop).real()});
    }
    std::size_t n_jumps = 0;
    std::string log;
    for (std::size_t i = 0; i < records.size(); ++i) {
        n_jumps += records[i].jumps.size();
        if (ts.write_jump_log) {
            for (const auto& e : records[i].jumps) {
                log += json{{"trajectory", i}, {"gamma_t", e.time * c.system.gamma},
                            {"channel", e.channel}}
                           .dump()
                       + "\n";
            }
        }
    }
    ScenarioOutput out;
    out.summary = {{"n_trajectories", ts.n_trajectories},
                   {"total_jumps", n_jumps},
                   {"has_lme_reference", !ref.empty()},
                   {"max_trace_distance", number(ref.empty() ? kNaN : max_distance)},
                   {"max_distance_over_stderr", number(ref.empty() ? kNaN : max_ratio)}};
    out.tables.emplace_back("trajectories", std::move(t));
    if (ts.write_jump_log) {
        out.extra_files.emplace_back("trajectories.jumps.jsonl", std::move(log));
    }
    return out;
}

ScenarioOutput custom_scan(const ScenarioConfig& c)
{
    const auto values = linspace(c.scan.start, c.scan.stop, c.scan.points);
    const int n = c.system.n_sites;
    const DensityMatrix rho_c = DensityMatrix::from_ket(coalescent_state(n));
    std::vector<std::vector<double>> rows(values.size());
    parallel_for(values.size(), c.threads, [&](std::size_t k) {
        const SystemConfig s = with_parameter(c.system, c.scan.parameter, values[k]);
        const NessResult r = ness_for(system_spec(s, c.seed), c.jump_rotation, c.ness.method);
        const Complex corr = n >= 2 ? correlator(r.rho, 1, n) : Complex{kNaN, kNaN};
        const double root = uhlmann_fidelity_root(r.rho, rho_c);
        rows[k] = {values[k],
                   purity(r.rho),
                   root * root,
                   root,
                   n >= 2 ? mutual_information(r.rho, Partition(n, {c.system.drive_site})) : kNaN,
                   corr.real(),
                   corr.imag(),
                   r.gap};
    });
    Table t{{to_string(c.scan.parameter), "purity", "fidelity_coalescent",
             "fidelity_root_coalescent", "mutual_information", "correlator_re", "correlator_im",
             "gap"},
            {}};
    for (auto& r : rows) {
        t.add_row(std::move(r));
    }
    ScenarioOutput out;
    out.summary = {{"parameter", to_string(c.scan.parameter)}, {"points", values.size()}};
    out.tables.emplace_back("custom_scan", std::move(t));
    return out;
}

} // namespace

const Table& ScenarioOutput::table(const std::string& stem) const
{
    for (const auto& [name, t] : tables) {
        if (name == stem) {
            return t;
        }
    }
    throw std::out_of_range("no table named '" + stem + "'");
}

std::vector<double> linspace(double start, double stop, int points)
{
    if (points < 1) {
        throw std::invalid_argument("linspace: points must be positive");
    }
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        v[static_cast<std::size_t>(k)] =
            points == 1 ? start : start + (stop - start) * k / (points - 1);
    }
    v.back() = points == 1 ? start : stop;
    return v;
}

SystemConfig with_parameter(SystemConfig s, ScanParameter p, double value)
{
    switch (p) {
    case ScanParameter::lambda_over_gamma:
        s.lambda_over_gamma = value;
        break;
    case ScanParameter::coupling_over_gamma:
        s.coupling_over_gamma = value;
        break;
    case ScanParameter::disorder_over_gamma:
        s.disorder_over_gamma = value;
        break;
    case ScanParameter::gamma: {
        // value is the new rate in units of the reference rate.
        if (!(value > 0.0)) {
            throw ConfigError("scanned gamma must be positive");
        }
        s.lambda_over_gamma /= value;
        s.coupling_over_gamma /= value;
        s.disorder_over_gamma /= value;
        if (s.anisotropy_over_gamma) {
            *s.anisotropy_over_gamma /= value;
        }
        s.gamma *= value;
        break;
    }
    }
    return s;
}

DensityMatrix initial_density(InitialState s, int n_sites)
{
    switch (s) {
    case InitialState::all_up:
        return DensityMatrix::from_ket(all_up(n_sites));
    case InitialState::coalescent:
        return DensityMatrix::from_ket(coalescent_state(n_sites));
    case InitialState::all_down:
        break;
    }
    return DensityMatrix::from_ket(all_down(n_sites));
}

DensityMatrix steady_state(const SystemSpec& spec, JumpRotation rotation, NessMethod method)
{
    return ness_for(spec, rotation, method).rho;
}

ScenarioOutput run_scenario(const ScenarioConfig& config)
{
    validate(config);
    ScenarioOutput out;
    switch (config.scenario) {
    case Scenario::fig1_purity_scan:
        out = fig1_purity_scan(config);
        break;
    case Scenario::fig2_fidelity_mi:
        out = fig2_fidelity_mi(config);
        break;
    case Scenario::fig3_nh_vs_lme:
        out = fig3_nh_vs_lme(config);
        break;
    case Scenario::fig4_correlator:
        out = fig4_correlator(config);
        break;
    case Scenario::fig5_gamma_scan:
        out = fig5_gamma_scan(config);
        break;
    case Scenario::fig6_disorder_scan:
        out = fig6_disorder_scan(config);
        break;
    case Scenario::ness:
        out = ness_scenario(config);
        break;
    case Scenario::trajectories:
        out = trajectories_scenario(config);
        break;
    case Scenario::custom_scan:
        out = custom_scan(config);
        break;
    }
    out.summary["scenario"] = to_string(config.scenario);
    out.summary["csv_schema_version"] = kCsvSchemaVersion;
    return out;
}

nlohmann::json write_outputs(const ScenarioConfig& config, const ScenarioOutput& output,
                             const std::string& out_dir, double wall_clock_seconds)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + out_dir
                                 + "': " + ec.message());
    }
    json files = json::array();
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file((fs::path(out_dir) / name).string(), content);
        files.push_back({{"file", name}, {"fnv1a64", hex64(fnv1a64(content))}});
    };
    for (const auto& [stem, table] : output.tables) {
        emit(stem + ".csv", to_csv(table));
    }
    for (const auto& [name, content] : output.extra_files) {
        emit(name, content);
    }
    emit(to_string(config.scenario) + ".summary.json", output.summary.dump(2) + "\n");

    json manifest = {
        {"scenario", to_string(config.scenario)},
        {"config_hash", config_hash(config)},
        {"config", to_json(config)},
        {"seed", config.seed},
        {"library_version", EPSPIN_VERSION},
        {"csv_schema_version", kCsvSchemaVersion},
        {"wall_clock_seconds", wall_clock_seconds},
        {"outputs", files},
    };
    write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    return manifest;
}

} // namespace epspin
