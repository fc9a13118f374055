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

#include "epspin/density_matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "epspin/errors.hpp"

namespace epspin {

namespace {

std::string format(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

} // namespace

DensityMatrix DensityMatrix::from_matrix(Operator m, const DensityTolerances& tol)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("density matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw InvariantViolation("finite", "density matrix has non-finite entries");
    }
    const double herm = max_abs(m - m.adjoint());
    if (herm > tol.hermitian) {
        throw InvariantViolation("hermitian", "|rho - rho^dag|_max = " + format(herm));
    }
    const double trace_err = std::abs(m.trace() - Complex{1.0, 0.0});
    if (trace_err > tol.trace) {
        throw InvariantViolation("unit-trace", "|Tr rho - 1| = " + format(trace_err));
    }
    const Operator sym = 0.5 * (m + m.adjoint());
    const double min_eig = herm_eig(sym).values[0];
    if (min_eig < tol.min_eigenvalue) {
        throw InvariantViolation("positive", "minimum eigenvalue " + format(min_eig));
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::sanitized(const Operator& m, double clip)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("density matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw InvariantViolation("finite", "density matrix has non-finite entries");
    }
    Operator sym = 0.5 * (m + m.adjoint());
    const double trace = sym.trace().real();
    if (!(std::abs(trace) > 1e-300)) {
        throw InvariantViolation("unit-trace", "trace vanishes, cannot normalize");
    }
    sym /= trace;
    const HermitianEigen eig = herm_eig(sym);
    const double min_eig = eig.values[0];
    if (min_eig < clip) {
        throw InvariantViolation("positive", "minimum eigenvalue " + format(min_eig)
                                                 + " below clip " + format(clip));
    }
    if (min_eig < 0.0) {
        Operator clipped = hermitian_function(eig, [](double x) { return x < 0.0 ? 0.0 : x; });
        clipped = 0.5 * (clipped + clipped.adjoint());
        clipped /= clipped.trace().real();
        return DensityMatrix(std::move(clipped));
    }
    return DensityMatrix(std::move(sym));
}

DensityMatrix DensityMatrix::from_ket(const Ket& psi)
{
    const double norm = psi.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("from_ket: zero or non-finite ket");
    }
    const Ket unit = psi / norm;
    Operator m = unit * unit.adjoint();
    m = 0.5 * (m + m.adjoint());
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim)
{
    if (dim < 1) {
        throw std::invalid_argument("maximally_mixed: dimension must be positive");
    }
    return DensityMatrix(Operator::Identity(dim, dim) / static_cast<double>(dim));
}

Complex DensityMatrix::expectation(const Operator& op) const
{
    if (op.rows() != m_.rows() || op.cols() != m_.cols()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    return (m_.cwiseProduct(op.transpose())).sum();
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep)
{
    return DensityMatrix::sanitized(partial_trace(rho.matrix(), keep));
}

} // namespace epspin
