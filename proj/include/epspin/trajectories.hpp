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

// Quantum-jump unraveling of the Lindblad equation. Each trajectory is a
// pure state evolved under the effective non-Hermitian Hamiltonian and
// interrupted by jumps; the ensemble average converges to the Lindblad
// solution.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epspin/density_matrix.hpp"
#include "epspin/model.hpp"
#include "epspin/rng.hpp"

namespace epspin {

enum class JumpScheme {
    first_order_euler, ///< one uniform per step, jump with probability dp
    norm_waiting_time, ///< jump once |psi|^2 under exp(-iHt) falls below a uniform draw
};

std::string to_string(JumpScheme s);
JumpScheme scheme_from_string(const std::string& name);

struct TrajectoryConfig {
    double dt = 1e-3;           ///< units of 1/gamma
    int n_trajectories = 1000;  ///< M
    std::uint64_t seed = 0;
    JumpScheme scheme = JumpScheme::norm_waiting_time;
    std::vector<double> record_times; ///< each a multiple of dt
    double max_jump_probability = 0.05;
    int threads = 0; ///< 0 selects the hardware concurrency
};

struct JumpEvent {
    double time = 0.0;
    int channel = 0; ///< index into the jump list
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<Ket> snapshots; ///< unit-normalized
    std::vector<JumpEvent> jumps;
};

/// One step of the stochastic Schroedinger equation. With probability
/// 1 - dp the state follows the no-click propagator (first-order (1 - iH dt)
/// or the exact exp(-iH dt)) and is renormalized; otherwise channel mu is
/// chosen with probability dp_mu / dp and psi becomes L_mu psi / |L_mu psi|.
/// Throws ConfigError if dp = sum Gamma_mu <L_mu^dag L_mu> dt exceeds
/// `max_jump_probability`. Returns the chosen channel, or nullopt.
std::optional<int> step_sse(Ket& psi, const Operator& h_eff,
                            const std::vector<RealizedJump>& jumps, double dt, CounterRng& rng,
                            JumpScheme scheme = JumpScheme::first_order_euler,
                            double max_jump_probability = 0.05);

/// Precomputed propagators for repeated trajectories of one model.
class TrajectorySimulator {
public:
    TrajectorySimulator(Operator h_eff, std::vector<RealizedJump> jumps, TrajectoryConfig config);

    /// Deterministic in (config.seed, index).
    TrajectoryRecord run(const Ket& psi0, std::uint64_t index) const;

    /// Trajectories 0 .. M-1, in parallel; the result is ordered by index and
    /// does not depend on the thread count.
    std::vector<TrajectoryRecord> run_ensemble(const Ket& psi0) const;

    const TrajectoryConfig& config() const noexcept { return config_; }

private:
    std::optional<int> choose_channel(const Ket& psi, double u, double* dp) const;

    Operator h_eff_;
    std::vector<RealizedJump> jumps_;
    std::vector<Operator> rate_weighted_; ///< Gamma_mu L_mu^dag L_mu
    TrajectoryConfig config_;
    Operator no_click_;                   ///< exp(-iH dt) or 1 - iH dt
    std::vector<std::int64_t> record_steps_;
};

struct EnsembleAverage {
    std::vector<double> times;
    std::vector<DensityMatrix> rho;
    /// Bootstrap standard error of the trace distance between the mean state
    /// and the true state: root-mean-square distance of resampled means from
    /// the full-sample mean.
    std::vector<double> standard_error;
};

struct BootstrapOptions {
    int resamples = 200;
    std::uint64_t seed = 0x5eedb007ULL;
};

/// Mean of |psi_i><psi_i| per recorded time (pairwise summation) with
/// bootstrap errors. Throws std::invalid_argument on M < 2 or misaligned
/// record grids.
EnsembleAverage ensemble_average(const std::vector<TrajectoryRecord>& records,
                                 const BootstrapOptions& options = {});

/// Bootstrap standard error of the mean of a real per-trajectory observable
/// <psi_i| op |psi_i> at each recorded time.
std::vector<double> observable_standard_error(const std::vector<TrajectoryRecord>& records,
                                              const Operator& op,
                                              const BootstrapOptions& options = {});

} // namespace epspin
