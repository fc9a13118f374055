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

// Time evolution by superoperator exponentials (Lindblad) or by the
// trace-renormalized non-Hermitian propagator. Closed-form propagators at
// the exceptional point cover the two-level block and the Jordan block of
// the Dicke sector.

#include <vector>

#include "epspin/density_matrix.hpp"
#include "epspin/liouvillian.hpp"

namespace epspin {

/// Output sample times (units of 1/gamma), strictly increasing, first >= 0.
/// Evolution always starts from the initial state at t = 0.
class TimeGrid {
public:
    /// n_steps + 1 equally spaced samples t_start, ..., t_end.
    static TimeGrid uniform(double t_start, double t_end, int n_steps);
    static TimeGrid from_times(std::vector<double> times);

    const std::vector<double>& times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    double front() const { return times_.front(); }
    double back() const { return times_.back(); }

private:
    explicit TimeGrid(std::vector<double> times);
    std::vector<double> times_;
};

/// rho(t) = exp(L t) rho0 at every sample. One exponential per distinct step
/// length is computed and reused. Each output is Hermitized and validated;
/// a trace drift above 1e-9 or an eigenvalue below -1e-7 throws
/// InvariantViolation.
std::vector<DensityMatrix> evolve_lme(const DensityMatrix& rho0, const Superoperator& l,
                                      const TimeGrid& grid);

/// rho(t) = M rho0 M^dag / Tr(M rho0 M^dag) with M = exp(-i h t), the trace
/// renormalized at every sample. Throws InvariantViolation("trace-underflow")
/// when the unnormalized trace is no longer representable.
std::vector<DensityMatrix> evolve_nonhermitian(const DensityMatrix& rho0, const Operator& h,
                                               const TimeGrid& grid);

/// Ket version of evolve_nonhermitian: exp(-i h t) psi0, unit-normalized.
std::vector<Ket> evolve_nonhermitian(const Ket& psi0, const Operator& h, const TimeGrid& grid);

/// exp(-i H t) for H = lambda s^x - i lambda s^+ s^- (the two-level model
/// at gamma = 2 lambda): e^{-lambda t / 2} (I - (i lambda t / 2) [[-i, 1], [1, i]]).
Operator ep_propagator_two_level(double lambda, double t);

/// exp(-i W t) of the Dicke-sector Jordan block at lambda = gamma / 2, entry
/// by entry: U_mn = (-i t lambda / N)^(m-n) / (m-n)! * sqrt(prod_{p=n}^{m-1} p (N+1-p))
/// for m >= n (1-based), zero above the diagonal.
Operator jordan_propagator(int n_sites, double lambda, double t);

/// Coefficients over the rotated Dicke basis. The raw vector grows
/// polynomially in t; `normalized` has unit 2-norm.
struct SubspaceCoefficients {
    Eigen::VectorXcd raw;
    Eigen::VectorXcd normalized;
};

/// c(t) = jordan_propagator(N, lambda, t) c0, evaluated in O(N^2).
SubspaceCoefficients ep_coefficients(const Eigen::VectorXcd& c0, int n_sites, double lambda,
                                     double t);

struct Rk4Options {
    double initial_dt = 0.05;
    double tolerance = 1e-8; ///< max-abs change between successive halvings
    int max_halvings = 12;
};

struct Rk4Result {
    std::vector<DensityMatrix> states;
    double dt = 0.0;      ///< step of the accepted run
    double change = 0.0;  ///< max-abs change against the previous halving
    bool converged = false;
};

/// Classical RK4 on d rho / dt = L rho, halving the step until two successive
/// runs agree to `tolerance` at every sample. Kept for cross-checks only.
Rk4Result evolve_lme_rk4(const DensityMatrix& rho0, const Superoperator& l, const TimeGrid& grid,
                         const Rk4Options& options = {});

struct SteadyStateOptions {
    double horizon = 1e3;    ///< evolve to gamma t = horizon
    double tolerance = 1e-6; ///< |rho(T) - rho(T/2)|_max
};

struct SteadyStateResult {
    DensityMatrix rho;
    double change = 0.0;
    bool converged = false;
};

/// Long-time limit of the Lindblad evolution from rho0.
SteadyStateResult converge_lme(const DensityMatrix& rho0, const Superoperator& l,
                               const SteadyStateOptions& options = {});

/// Long-time limit of the renormalized non-Hermitian evolution from rho0.
SteadyStateResult converge_nonhermitian(const DensityMatrix& rho0, const Operator& h,
                                        const SteadyStateOptions& options = {});

} // namespace epspin
