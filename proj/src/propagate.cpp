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

#include "epspin/propagate.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "epspin/errors.hpp"

namespace epspin {

namespace {

std::string sci(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

constexpr double kTraceDrift = 1e-9;
constexpr double kPositivityClip = -1e-7;

// Exponentials keyed by step length. Steps that agree to a relative 1e-13
// share one entry, so a uniform grid costs a single exponential.
class StepCache {
public:
    explicit StepCache(const Operator& generator, Complex factor)
        : generator_(generator), factor_(factor)
    {
    }

    const Operator& get(double step)
    {
        for (const auto& [h, e] : entries_) {
            if (std::abs(h - step) <= 1e-13 * std::max(1.0, std::abs(step))) {
                return e;
            }
        }
        entries_.emplace_back(step, matrix_exp(generator_, factor_ * step));
        return entries_.back().second;
    }

private:
    const Operator& generator_;
    Complex factor_;
    std::vector<std::pair<double, Operator>> entries_;
};

DensityMatrix checked_state(const Operator& m, double t)
{
    const double trace_err = std::abs(m.trace() - Complex{1.0, 0.0});
    if (trace_err > kTraceDrift) {
        throw InvariantViolation("trace-preserving", "|Tr rho - 1| = " + sci(trace_err)
                                                         + " at t = " + sci(t));
    }
    return DensityMatrix::sanitized(m, kPositivityClip);
}

void check_dims(Eigen::Index state_dim, Eigen::Index op_dim, const char* what)
{
    if (state_dim != op_dim) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch ("
                                    + std::to_string(state_dim) + " vs "
                                    + std::to_string(op_dim) + ")");
    }
}

Operator rk4_run(const Operator& l, Eigen::VectorXcd v, const std::vector<double>& times,
                 double dt_max)
{
    Operator out(v.size(), static_cast<Eigen::Index>(times.size()));
    double t = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double span = times[k] - t;
        const int steps = span > 0.0 ? static_cast<int>(std::ceil(span / dt_max - 1e-12)) : 0;
        const double h = steps > 0 ? span / steps : 0.0;
        for (int s = 0; s < steps; ++s) {
            const Eigen::VectorXcd k1 = l * v;
            const Eigen::VectorXcd k2 = l * (v + 0.5 * h * k1);
            const Eigen::VectorXcd k3 = l * (v + 0.5 * h * k2);
            const Eigen::VectorXcd k4 = l * (v + h * k3);
            v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        t = times[k];
        out.col(static_cast<Eigen::Index>(k)) = v;
    }
    return out;
}

} // namespace

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times))
{
    if (times_.empty()) {
        throw std::invalid_argument("TimeGrid: no sample times");
    }
    if (!(times_.front() >= 0.0)) {
        throw std::invalid_argument("TimeGrid: first sample must be >= 0");
    }
    for (std::size_t k = 0; k < times_.size(); ++k) {
        if (!std::isfinite(times_[k])) {
            throw std::invalid_argument("TimeGrid: non-finite sample time");
        }
        if (k > 0 && !(times_[k] > times_[k - 1])) {
            throw std::invalid_argument("TimeGrid: sample times must be strictly increasing");
        }
    }
}

TimeGrid TimeGrid::uniform(double t_start, double t_end, int n_steps)
{
    if (n_steps < 1) {
        throw std::invalid_argument("TimeGrid::uniform: n_steps must be positive");
    }
    if (!(t_end > t_start)) {
        throw std::invalid_argument("TimeGrid::uniform: t_end must exceed t_start");
    }
    std::vector<double> times(static_cast<std::size_t>(n_steps) + 1);
    const double dt = (t_end - t_start) / n_steps;
    for (int k = 0; k <= n_steps; ++k) {
        times[static_cast<std::size_t>(k)] = t_start + k * dt;
    }
    times.back() = t_end;
    return TimeGrid(std::move(times));
}

TimeGrid TimeGrid::from_times(std::vector<double> times)
{
    return TimeGrid(std::move(times));
}

std::vector<DensityMatrix> evolve_lme(const DensityMatrix& rho0, const Superoperator& l,
                                      const TimeGrid& grid)
{
    check_dims(rho0.dim(), l.hilbert_dim(), "evolve_lme");
    StepCache cache(l.matrix(), Complex{1.0, 0.0});
    std::vector<DensityMatrix> out;
    out.reserve(grid.size());
    Eigen::VectorXcd v = vectorize(rho0);
    double t = 0.0;
    for (double sample : grid.times()) {
        if (sample > t) {
            v = cache.get(sample - t) * v;
            t = sample;
        }
        out.push_back(sample == 0.0 ? rho0 : checked_state(devectorize(v), sample));
    }
    return out;
}

std::vector<DensityMatrix> evolve_nonhermitian(const DensityMatrix& rho0, const Operator& h,
                                               const TimeGrid& grid)
{
    check_dims(rho0.dim(), h.rows(), "evolve_nonhermitian");
    // Carry a factor B with rho = B B^dag. Propagating B keeps every sample
    // positive by construction; near the exceptional point, propagating rho
    // itself lets rounding drive small eigenvalues negative.
    const HermitianEigen eig = herm_eig(rho0.matrix());
    Operator b = eig.vectors
                 * eig.values.unaryExpr([](double p) { return p > 0.0 ? std::sqrt(p) : 0.0; })
                       .cast<Complex>()
                       .asDiagonal();
    StepCache cache(h, Complex{0.0, -1.0});
    std::vector<DensityMatrix> out;
    out.reserve(grid.size());
    double t = 0.0;
    for (double sample : grid.times()) {
        if (sample > t) {
            b = cache.get(sample - t) * b;
            const double trace = b.squaredNorm();
            if (!(trace > std::numeric_limits<double>::min()) || !std::isfinite(trace)) {
                throw InvariantViolation("trace-underflow",
                                         "unnormalized trace " + sci(trace) + " at t = "
                                             + sci(sample) + "; the state has fully decayed");
            }
            b /= std::sqrt(trace);
            t = sample;
        }
        out.push_back(sample == 0.0 ? rho0
                                    : DensityMatrix::sanitized(b * b.adjoint(), kPositivityClip));
    }
    return out;
}

std::vector<Ket> evolve_nonhermitian(const Ket& psi0, const Operator& h, const TimeGrid& grid)
{
    check_dims(psi0.size(), h.rows(), "evolve_nonhermitian");
    const double norm0 = psi0.norm();
    if (!(norm0 > 0.0)) {
        throw std::invalid_argument("evolve_nonhermitian: zero initial ket");
    }
    StepCache cache(h, Complex{0.0, -1.0});
    std::vector<Ket> out;
    out.reserve(grid.size());
    Ket psi = psi0 / norm0;
    double t = 0.0;
    for (double sample : grid.times()) {
        if (sample > t) {
            psi = cache.get(sample - t) * psi;
            const double norm = psi.norm();
            if (!(norm > std::numeric_limits<double>::min()) || !std::isfinite(norm)) {
                throw InvariantViolation("trace-underflow",
                                         "ket norm " + sci(norm) + " at t = " + sci(sample));
            }
            psi /= norm;
            t = sample;
        }
        out.push_back(psi);
    }
    return out;
}

Operator ep_propagator_two_level(double lambda, double t)
{
    Operator k(2, 2);
    k << Complex{0.0, -1.0}, 1.0, 1.0, Complex{0.0, 1.0};
    const Complex a{0.0, -lambda * t / 2.0};
    return std::exp(-lambda * t / 2.0) * (Operator::Identity(2, 2) + a * k);
}

Operator jordan_propagator(int n_sites, double lambda, double t)
{
    if (n_sites < 1) {
        throw std::invalid_argument("jordan_propagator: n_sites must be positive");
    }
    const int dim = n_sites + 1;
    const Complex x{0.0, -t * lambda / n_sites};
    Operator u = Operator::Zero(dim, dim);
    for (int n = 1; n <= dim; ++n) {
        // Walk down column n and build each entry (m, n) incrementally from
        // entry (m - 1, n).
        Complex entry{1.0, 0.0};
        u(n - 1, n - 1) = entry;
        for (int m = n + 1; m <= dim; ++m) {
            const int p = m - 1;
            entry *= x / static_cast<double>(m - n)
                     * std::sqrt(static_cast<double>(p) * (n_sites + 1 - p));
            u(m - 1, n - 1) = entry;
        }
    }
    return u;
}

SubspaceCoefficients ep_coefficients(const Eigen::VectorXcd& c0, int n_sites, double lambda,
                                     double t)
{
    if (c0.size() != n_sites + 1) {
        throw std::invalid_argument("ep_coefficients: expected " + std::to_string(n_sites + 1)
                                    + " coefficients");
    }
    SubspaceCoefficients c;
    c.raw = jordan_propagator(n_sites, lambda, t).triangularView<Eigen::Lower>() * c0;
    const double norm = c.raw.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvariantViolation("finite", "coefficient vector vanished or overflowed");
    }
    c.normalized = c.raw / norm;
    return c;
}

Rk4Result evolve_lme_rk4(const DensityMatrix& rho0, const Superoperator& l, const TimeGrid& grid,
                         const Rk4Options& options)
{
    check_dims(rho0.dim(), l.hilbert_dim(), "evolve_lme_rk4");
    if (!(options.initial_dt > 0.0)) {
        throw std::invalid_argument("evolve_lme_rk4: initial_dt must be positive");
    }
    const Eigen::VectorXcd v0 = vectorize(rho0);
    double dt = options.initial_dt;
    Operator previous = rk4_run(l.matrix(), v0, grid.times(), dt);
    Rk4Result result;
    for (int h = 0; h < options.max_halvings; ++h) {
        dt /= 2.0;
        Operator current = rk4_run(l.matrix(), v0, grid.times(), dt);
        result.change = max_abs(current - previous);
        previous = std::move(current);
        result.dt = dt;
        if (result.change <= options.tolerance) {
            result.converged = true;
            break;
        }
    }
    for (Eigen::Index k = 0; k < previous.cols(); ++k) {
        result.states.push_back(checked_state(devectorize(previous.col(k)), grid.times()[k]));
    }
    return result;
}

SteadyStateResult converge_lme(const DensityMatrix& rho0, const Superoperator& l,
                               const SteadyStateOptions& options)
{
    const auto states = evolve_lme(
        rho0, l, TimeGrid::from_times({options.horizon / 2.0, options.horizon}));
    const double change = max_abs(states[1].matrix() - states[0].matrix());
    return {states[1], change, change <= options.tolerance};
}

SteadyStateResult converge_nonhermitian(const DensityMatrix& rho0, const Operator& h,
                                        const SteadyStateOptions& options)
{
    const auto states = evolve_nonhermitian(
        rho0, h, TimeGrid::from_times({options.horizon / 2.0, options.horizon}));
    const double change = max_abs(states[1].matrix() - states[0].matrix());
    return {states[1], change, change <= options.tolerance};
}

} // namespace epspin
