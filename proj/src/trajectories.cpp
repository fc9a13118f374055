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

#include "epspin/trajectories.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "epspin/errors.hpp"
#include "epspin/observables.hpp"
#include "epspin/parallel.hpp"

namespace epspin {

namespace {

std::string sci(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

void check_jump_probability(double dp, double cap, double dt)
{
    if (dp > cap) {
        throw ConfigError("jump probability per step " + sci(dp) + " exceeds " + sci(cap)
                          + " at dt = " + sci(dt) + "; reduce dt");
    }
}

// Pick the channel whose cumulative weight first exceeds u (u < total).
int pick_channel(const std::vector<double>& weights, double u)
{
    double acc = 0.0;
    int last_positive = -1;
    for (std::size_t mu = 0; mu < weights.size(); ++mu) {
        if (weights[mu] > 0.0) {
            last_positive = static_cast<int>(mu);
            acc += weights[mu];
            if (u < acc) {
                return static_cast<int>(mu);
            }
        }
    }
    // Rounding can leave u marginally above the accumulated total.
    return last_positive;
}

Ket apply_jump(const Operator& op, const Ket& psi)
{
    Ket out = op * psi;
    const double norm = out.norm();
    if (!(norm > 0.0)) {
        throw InvariantViolation("jump-target", "selected jump annihilates the state");
    }
    return out / norm;
}

Operator no_click_propagator(const Operator& h_eff, double dt, JumpScheme scheme)
{
    if (scheme == JumpScheme::first_order_euler) {
        return Operator::Identity(h_eff.rows(), h_eff.cols()) - kI * dt * h_eff;
    }
    return matrix_exp(h_eff, Complex{0.0, -dt});
}

// Sum of |psi_i><psi_i| over records[lo, hi) at sample k, split in halves so
// the rounding pattern depends only on M.
Operator pairwise_projector_sum(const std::vector<TrajectoryRecord>& records, std::size_t k,
                                std::size_t lo, std::size_t hi)
{
    if (hi - lo == 1) {
        const Ket& psi = records[lo].snapshots[k];
        return psi * psi.adjoint();
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_projector_sum(records, k, lo, mid)
           + pairwise_projector_sum(records, k, mid, hi);
}

void check_records(const std::vector<TrajectoryRecord>& records)
{
    if (records.size() < 2) {
        throw std::invalid_argument("ensemble_average: need at least two trajectories");
    }
    const auto& times = records.front().times;
    for (const auto& r : records) {
        if (r.times != times || r.snapshots.size() != times.size()) {
            throw std::invalid_argument("ensemble_average: record grids are misaligned");
        }
    }
}

// Multiplicities of each trajectory in bootstrap resample b.
Eigen::VectorXd resample_weights(std::size_t m, std::uint64_t seed, int b)
{
    CounterRng rng(seed, static_cast<std::uint64_t>(b));
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        auto idx = static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(m));
        counts[std::min<Eigen::Index>(idx, static_cast<Eigen::Index>(m) - 1)] += 1.0;
    }
    return counts;
}

} // namespace

std::string to_string(JumpScheme s)
{
    return s == JumpScheme::first_order_euler ? "first_order_euler" : "norm_waiting_time";
}

JumpScheme scheme_from_string(const std::string& name)
{
    if (name == "first_order_euler") {
        return JumpScheme::first_order_euler;
    }
    if (name == "norm_waiting_time") {
        return JumpScheme::norm_waiting_time;
    }
    throw std::invalid_argument("unknown jump scheme '" + name + "'");
}

std::optional<int> step_sse(Ket& psi, const Operator& h_eff,
                            const std::vector<RealizedJump>& jumps, double dt, CounterRng& rng,
                            JumpScheme scheme, double max_jump_probability)
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("step_sse: dt must be positive");
    }
    std::vector<double> weights(jumps.size());
    double dp = 0.0;
    for (std::size_t mu = 0; mu < jumps.size(); ++mu) {
        weights[mu] = jumps[mu].rate * (jumps[mu].op * psi).squaredNorm() * dt;
        dp += weights[mu];
    }
    check_jump_probability(dp, max_jump_probability, dt);
    const double u = rng.uniform();
    if (u < dp) {
        const int mu = pick_channel(weights, u);
        psi = apply_jump(jumps[static_cast<std::size_t>(mu)].op, psi);
        return mu;
    }
    psi = no_click_propagator(h_eff, dt, scheme) * psi;
    psi.normalize();
    return std::nullopt;
}

TrajectorySimulator::TrajectorySimulator(Operator h_eff, std::vector<RealizedJump> jumps,
                                         TrajectoryConfig config)
    : h_eff_(std::move(h_eff)), jumps_(std::move(jumps)), config_(std::move(config))
{
    if (!(config_.dt > 0.0)) {
        throw ConfigError("trajectory dt must be positive");
    }
    if (config_.n_trajectories < 1) {
        throw ConfigError("n_trajectories must be positive");
    }
    if (config_.record_times.empty()) {
        throw ConfigError("record_times is empty");
    }
    for (const auto& j : jumps_) {
        if (j.op.rows() != h_eff_.rows()) {
            throw std::invalid_argument("TrajectorySimulator: jump dimension mismatch");
        }
        rate_weighted_.push_back(j.rate * (j.op.adjoint() * j.op));
    }
    std::int64_t previous = -1;
    for (double t : config_.record_times) {
        const auto step = static_cast<std::int64_t>(std::llround(t / config_.dt));
        if (std::abs(static_cast<double>(step) * config_.dt - t) > 1e-9 * std::max(1.0, t)) {
            throw ConfigError("record time " + sci(t) + " is not a multiple of dt");
        }
        if (step <= previous) {
            throw ConfigError("record times must be strictly increasing and >= 0");
        }
        previous = step;
        record_steps_.push_back(step);
    }
    no_click_ = no_click_propagator(h_eff_, config_.dt, config_.scheme);
}

std::optional<int> TrajectorySimulator::choose_channel(const Ket& psi, double u, double* dp) const
{
    std::vector<double> weights(jumps_.size());
    double total = 0.0;
    for (std::size_t mu = 0; mu < jumps_.size(); ++mu) {
        weights[mu] = (psi.adjoint() * rate_weighted_[mu] * psi)(0, 0).real();
        total += weights[mu];
    }
    if (dp != nullptr) {
        *dp = total;
    }
    if (!(total > 0.0) || u >= total) {
        return std::nullopt;
    }
    return pick_channel(weights, u);
}

TrajectoryRecord TrajectorySimulator::run(const Ket& psi0, std::uint64_t index) const
{
    if (psi0.size() != h_eff_.rows()) {
        throw std::invalid_argument("TrajectorySimulator::run: dimension mismatch");
    }
    CounterRng rng(config_.seed, index);
    TrajectoryRecord rec;
    rec.times = config_.record_times;
    rec.snapshots.reserve(record_steps_.size());

    const double dt = config_.dt;
    const bool waiting = config_.scheme == JumpScheme::norm_waiting_time;
    // In the waiting-time scheme psi stays unnormalized between jumps and
    // its squared norm is compared with the threshold r.
    Ket psi = psi0.normalized();
    double threshold = waiting ? rng.uniform() : 0.0;
    std::size_t next_record = 0;
    const std::int64_t last_step = record_steps_.back();

    for (std::int64_t step = 0;; ++step) {
        while (next_record < record_steps_.size() && record_steps_[next_record] == step) {
            rec.snapshots.push_back(psi.normalized());
            ++next_record;
        }
        if (step == last_step) {
            break;
        }
        const double norm2 = psi.squaredNorm();
        double dp = 0.0;
        for (const auto& w : rate_weighted_) {
            dp += (psi.adjoint() * w * psi)(0, 0).real();
        }
        dp *= dt / norm2;
        check_jump_probability(dp, config_.max_jump_probability, dt);
        const double t_next = static_cast<double>(step + 1) * dt;

        if (waiting) {
            psi = no_click_ * psi;
            const double now = psi.squaredNorm();
            if (!(now > 0.0) || !std::isfinite(now)) {
                throw InvariantViolation("trace-underflow", "trajectory norm vanished");
            }
            if (now <= threshold) {
                const Ket unit = psi / std::sqrt(now);
                double total = 0.0;
                choose_channel(unit, 0.0, &total);
                const auto mu = choose_channel(unit, rng.uniform() * total, nullptr);
                if (mu) {
                    psi = apply_jump(jumps_[static_cast<std::size_t>(*mu)].op, unit);
                    rec.jumps.push_back({t_next, *mu});
                }
                threshold = rng.uniform();
            }
        } else {
            const double u = rng.uniform();
            const Ket unit = psi / std::sqrt(norm2);
            const auto mu = choose_channel(unit, u / dt, nullptr);
            if (mu) {
                psi = apply_jump(jumps_[static_cast<std::size_t>(*mu)].op, unit);
                rec.jumps.push_back({t_next, *mu});
            } else {
                psi = no_click_ * unit;
                psi.normalize();
            }
        }
    }
    return rec;
}

std::vector<TrajectoryRecord> TrajectorySimulator::run_ensemble(const Ket& psi0) const
{
    std::vector<TrajectoryRecord> out(static_cast<std::size_t>(config_.n_trajectories));
    parallel_for(out.size(), config_.threads,
                 [&](std::size_t i) { out[i] = run(psi0, static_cast<std::uint64_t>(i)); });
    return out;
}

EnsembleAverage ensemble_average(const std::vector<TrajectoryRecord>& records,
                                 const BootstrapOptions& options)
{
    check_records(records);
    const std::size_t m = records.size();
    const std::size_t n_times = records.front().times.size();
    const Eigen::Index d = records.front().snapshots.front().size();

    EnsembleAverage avg;
    avg.times = records.front().times;
    std::vector<Operator> means;
    for (std::size_t k = 0; k < n_times; ++k) {
        Operator mean = pairwise_projector_sum(records, k, 0, m) / static_cast<double>(m);
        avg.rho.push_back(DensityMatrix::sanitized(mean));
        means.push_back(std::move(mean));
    }

    // Resampled mean minus full mean is Psi diag((c - 1) / M) Psi^dag.
    std::vector<double> sum_sq(n_times, 0.0);
    Operator psi(d, static_cast<Eigen::Index>(m));
    std::vector<Eigen::VectorXd> weights;
    for (int b = 0; b < options.resamples; ++b) {
        weights.push_back((resample_weights(m, options.seed, b).array() - 1.0)
                          / static_cast<double>(m));
    }
    for (std::size_t k = 0; k < n_times; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            psi.col(static_cast<Eigen::Index>(i)) = records[i].snapshots[k];
        }
        for (const auto& w : weights) {
            const Operator delta = (psi * w.cast<Complex>().asDiagonal()) * psi.adjoint();
            const double dist = trace_distance(delta, Operator::Zero(d, d));
            sum_sq[k] += dist * dist;
        }
    }
    for (std::size_t k = 0; k < n_times; ++k) {
        avg.standard_error.push_back(
            options.resamples > 0 ? std::sqrt(sum_sq[k] / options.resamples) : 0.0);
    }
    return avg;
}

std::vector<double> observable_standard_error(const std::vector<TrajectoryRecord>& records,
                                              const Operator& op,
                                              const BootstrapOptions& options)
{
    check_records(records);
    const std::size_t m = records.size();
    const std::size_t n_times = records.front().times.size();
    std::vector<Eigen::VectorXd> weights;
    for (int b = 0; b < options.resamples; ++b) {
        weights.push_back(resample_weights(m, options.seed, b) / static_cast<double>(m));
    }
    std::vector<double> out;
    Eigen::VectorXd values(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < n_times; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            const Ket& psi = records[i].snapshots[k];
            values[static_cast<Eigen::Index>(i)] = (psi.adjoint() * op * psi)(0, 0).real();
        }
        const double mean = values.mean();
        double acc = 0.0;
        for (const auto& w : weights) {
            const double diff = w.dot(values) - mean;
            acc += diff * diff;
        }
        out.push_back(options.resamples > 0 ? std::sqrt(acc / options.resamples) : 0.0);
    }
    return out;
}

} // namespace epspin
