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

#include "epspin/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SparseLU>

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

} // namespace

Eigen::VectorXcd vectorize(const Operator& rho)
{
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("vectorize: matrix is not square");
    }
    const Eigen::Index d = rho.rows();
    Eigen::VectorXcd v(d * d);
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            v[m * d + n] = rho(m, n);
        }
    }
    return v;
}

Eigen::VectorXcd vectorize(const DensityMatrix& rho)
{
    return vectorize(rho.matrix());
}

Operator devectorize(const Eigen::VectorXcd& v)
{
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size() || d == 0) {
        throw std::invalid_argument("devectorize: length " + std::to_string(v.size())
                                    + " is not a positive perfect square");
    }
    Operator rho(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            rho(m, n) = v[m * d + n];
        }
    }
    return rho;
}

Superoperator::Superoperator(Operator matrix, Eigen::Index hilbert_dim)
    : m_(std::move(matrix)), d_(hilbert_dim)
{
    if (m_.rows() != d_ * d_ || m_.cols() != d_ * d_) {
        throw std::invalid_argument("Superoperator: matrix is not d^2 x d^2");
    }
}

Operator Superoperator::apply(const Operator& rho) const
{
    if (rho.rows() != d_ || rho.cols() != d_) {
        throw std::invalid_argument("Superoperator::apply: dimension mismatch");
    }
    return devectorize(m_ * vectorize(rho));
}

Superoperator build_liouvillian(const Operator& h_eff, const std::vector<RealizedJump>& jumps)
{
    if (h_eff.rows() != h_eff.cols()) {
        throw std::invalid_argument("build_liouvillian: Hamiltonian is not square");
    }
    const Eigen::Index d = h_eff.rows();
    if (d > (Eigen::Index{1} << kMaxSuperoperatorSites)) {
        throw std::length_error("build_liouvillian: more than "
                                + std::to_string(kMaxSuperoperatorSites) + " sites");
    }
    const Operator id = Operator::Identity(d, d);
    Operator l = Complex{0.0, -1.0} * (kron(h_eff, id) - kron(id, h_eff.conjugate()));
    for (const auto& j : jumps) {
        if (j.op.rows() != d || j.op.cols() != d) {
            throw std::invalid_argument("build_liouvillian: jump operator dimension mismatch");
        }
        if (j.rate != 0.0) {
            l += j.rate * kron(j.op, j.op.conjugate());
        }
    }
    return Superoperator(std::move(l), d);
}

Superoperator build_liouvillian(const SystemSpec& spec, const std::vector<JumpOperator>& jumps)
{
    return build_liouvillian(build_effective_nonhermitian(spec, jumps),
                             realize_jumps(jumps, spec.n_sites));
}

namespace {

NessResult ness_by_kernel_solve(const Superoperator& l, const NessOptions& options)
{
    const Eigen::Index d = l.hilbert_dim();
    const Eigen::Index n = d * d;
    // The diagonal rows of L sum to zero (trace preservation), so the row of
    // index (0, 0) is redundant and can carry the normalization instead.
    Operator a = l.matrix();
    a.row(0).setZero();
    for (Eigen::Index m = 0; m < d; ++m) {
        a(0, m * d + m) = 1.0;
    }
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    b[0] = 1.0;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    // The rcond estimate alone can miss exactly zero pivots, so the pivot
    // spread is checked as well.
    const double rcond = lu.rcond();
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double spread = pivots.minCoeff() / pivots.maxCoeff();
    const Eigen::VectorXcd v = lu.solve(b);
    if (!(rcond > 1e-13) || !(spread > 1e-13) || !v.allFinite()) {
        throw InvariantViolation("steady-state-unique",
                                 "trace-constrained system is singular (rcond " + sci(rcond)
                                     + ", pivot ratio " + sci(spread)
                                     + "); the steady manifold is degenerate");
    }
    DensityMatrix rho = DensityMatrix::sanitized(devectorize(v), options.clip);
    const double residual = (l.matrix() * vectorize(rho)).norm();
    if (!(residual <= options.zero_tolerance)) {
        throw InvariantViolation("steady-state-exists",
                                 "residual |L rho| = " + sci(residual) + " above "
                                     + sci(options.zero_tolerance));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {std::move(rho), Complex{nan, nan}, residual, nan};
}


using Triplet = Eigen::Triplet<Complex>;

// Triplets of scale * (a (x) b), skipping zeros of either factor.
void kron_triplets(const Operator& a, const Operator& b, Complex scale, std::vector<Triplet>& out)
{
    const Eigen::Index nb = b.rows();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) == Complex{}) {
                continue;
            }
            for (Eigen::Index k = 0; k < b.rows(); ++k) {
                for (Eigen::Index m = 0; m < b.cols(); ++m) {
                    if (b(k, m) != Complex{}) {
                        out.emplace_back(static_cast<int>(i * nb + k), static_cast<int>(j * nb + m),
                                         scale * a(i, j) * b(k, m));
                    }
                }
            }
        }
    }
}

} // namespace

SparseOperator build_liouvillian_sparse(const Operator& h_eff,
                                        const std::vector<RealizedJump>& jumps)
{
    if (h_eff.rows() != h_eff.cols()) {
        throw std::invalid_argument("build_liouvillian_sparse: Hamiltonian is not square");
    }
    const Eigen::Index d = h_eff.rows();
    if (d > (Eigen::Index{1} << kMaxSuperoperatorSites)) {
        throw std::length_error("build_liouvillian_sparse: more than "
                                + std::to_string(kMaxSuperoperatorSites) + " sites");
    }
    const Operator id = Operator::Identity(d, d);
    std::vector<Triplet> t;
    kron_triplets(h_eff, id, Complex{0.0, -1.0}, t);
    kron_triplets(id, h_eff.conjugate(), Complex{0.0, 1.0}, t);
    for (const auto& j : jumps) {
        if (j.op.rows() != d || j.op.cols() != d) {
            throw std::invalid_argument("build_liouvillian_sparse: jump dimension mismatch");
        }
        if (j.rate != 0.0) {
            kron_triplets(j.op, j.op.conjugate(), j.rate, t);
        }
    }
    SparseOperator l(d * d, d * d);
    l.setFromTriplets(t.begin(), t.end());
    l.prune(Complex{0.0, 0.0});
    return l;
}

NessResult ness_sparse(const Operator& h_eff, const std::vector<RealizedJump>& jumps,
                       const NessOptions& options)
{
    const SparseOperator l = build_liouvillian_sparse(h_eff, jumps);
    const Eigen::Index d = h_eff.rows();
    const Eigen::Index n = d * d;
    // Same trace-row replacement as the dense kernel solve.
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(l.nonZeros() + d));
    for (Eigen::Index col = 0; col < l.outerSize(); ++col) {
        for (SparseOperator::InnerIterator it(l, col); it; ++it) {
            if (it.row() != 0) {
                t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
            }
        }
    }
    for (Eigen::Index m = 0; m < d; ++m) {
        t.emplace_back(0, static_cast<int>(m * d + m), Complex{1.0, 0.0});
    }
    SparseOperator a(n, n);
    a.setFromTriplets(t.begin(), t.end());
    a.makeCompressed();
    Eigen::SparseLU<SparseOperator, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) {
        throw InvariantViolation("steady-state-unique",
                                 "sparse factorization failed: " + lu.lastErrorMessage());
    }
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    b[0] = 1.0;
    const Eigen::VectorXcd v = lu.solve(b);
    if (lu.info() != Eigen::Success || !v.allFinite()) {
        throw InvariantViolation("steady-state-unique", "sparse solve failed; the steady "
                                                        "manifold may be degenerate");
    }
    DensityMatrix rho = DensityMatrix::sanitized(devectorize(v), options.clip);
    const double residual = (l * vectorize(rho)).norm();
    if (!(residual <= options.zero_tolerance)) {
        throw InvariantViolation("steady-state-exists",
                                 "residual |L rho| = " + sci(residual) + " above "
                                     + sci(options.zero_tolerance));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {std::move(rho), Complex{nan, nan}, residual, nan};
}

NessResult ness(const Superoperator& l, const NessOptions& options)
{
    if (options.method == NessMethod::kernel_solve) {
        return ness_by_kernel_solve(l, options);
    }
    if (options.method == NessMethod::sparse_lu) {
        throw std::invalid_argument("ness: the sparse method takes the Hamiltonian and jumps; "
                                    "call ness_sparse");
    }
    const Operator& m = l.matrix();
    const Eigen::VectorXcd eps = eigenvalues(m);

    Eigen::Index nearest = 0;
    for (Eigen::Index k = 1; k < eps.size(); ++k) {
        if (std::abs(eps[k]) < std::abs(eps[nearest])) {
            nearest = k;
        }
    }
    if (std::abs(eps[nearest]) > options.zero_tolerance) {
        throw InvariantViolation("steady-state-exists",
                                 "no Liouvillian eigenvalue within " + sci(options.zero_tolerance)
                                     + " of zero (nearest |eps| = "
                                     + sci(std::abs(eps[nearest])) + ")");
    }
    int near_zero = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < eps.size(); ++k) {
        if (std::abs(eps[k]) <= options.degeneracy_tolerance) {
            ++near_zero;
        }
        if (k != nearest) {
            gap = std::min(gap, std::abs(eps[k].real()));
        }
    }
    if (near_zero > 1) {
        throw InvariantViolation("steady-state-unique",
                                 std::to_string(near_zero) + " eigenvalues within "
                                     + sci(options.degeneracy_tolerance) + " of zero");
    }

    // Inverse iteration recovers the eigenvector. The shift sits slightly off
    // the eigenvalue so the factorization stays regular when it is exactly 0.
    const Eigen::Index n = m.rows();
    const double offset = 1e-12 * std::max(1.0, max_abs(m));
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m - (eps[nearest] - offset)
                                                           * Operator::Identity(n, n));
    Eigen::VectorXcd v = vectorize(Operator::Identity(l.hilbert_dim(), l.hilbert_dim()));
    for (int it = 0; it < 3; ++it) {
        v = lu.solve(v);
        const double norm = v.norm();
        if (!std::isfinite(norm) || norm == 0.0) {
            throw InvariantViolation("steady-state-exists", "inverse iteration broke down");
        }
        v /= norm;
    }

    DensityMatrix rho = DensityMatrix::sanitized(devectorize(v), options.clip);
    const double residual = (m * vectorize(rho)).norm();
    return {std::move(rho), eps[nearest], residual, gap};
}

DensityMatrix two_level_ness_analytic(double lambda, double gamma)
{
    const double denom = 2.0 * lambda * lambda + gamma * gamma;
    if (denom == 0.0) {
        throw std::invalid_argument("two_level_ness_analytic: lambda and gamma both zero");
    }
    Operator rho(2, 2);
    rho << lambda * lambda / denom, Complex{0.0, -lambda * gamma / denom},
        Complex{0.0, lambda * gamma / denom}, (lambda * lambda + gamma * gamma) / denom;
    return DensityMatrix::from_matrix(rho);
}

Spectrum liouvillian_spectrum(const Superoperator& l)
{
    Spectrum s;
    s.values = eigenvalues(l.matrix());
    std::sort(s.values.begin(), s.values.end(),
              [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
    s.max_real_part = s.values.size() > 0 ? s.values[0].real() : 0.0;
    s.gap = s.values.size() > 1 ? -s.values[1].real() : 0.0;
    const double tol = 1e-9 * std::max(1.0, max_abs(l.matrix()));
    if (s.max_real_part > tol) {
        throw InvariantViolation("contractive", "eigenvalue with real part "
                                                    + sci(s.max_real_part));
    }
    return s;
}

} // namespace epspin
