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

// Row-stacking vectorization: |rho>> has entry rho(m, n) at index m * d + n,
// so vec(A rho B) = (A (x) B^T) vec(rho). With this convention
//   L = -i (H (x) I - I (x) H^*) + sum_mu Gamma_mu L_mu (x) L_mu^*
// and the two-level Liouvillian comes out entry for entry as the 4x4 matrix
// with rows (-g, il/2, -il/2, 0), (il/2, -g/2, 0, -il/2),
// (-il/2, 0, -g/2, il/2), (g, -il/2, il/2, 0).

#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "epspin/density_matrix.hpp"
#include "epspin/model.hpp"

namespace epspin {

Eigen::VectorXcd vectorize(const Operator& rho);
Eigen::VectorXcd vectorize(const DensityMatrix& rho);

/// Inverse of vectorize; throws if the length is not a perfect square.
Operator devectorize(const Eigen::VectorXcd& v);

class Superoperator {
public:
    Superoperator(Operator matrix, Eigen::Index hilbert_dim);

    const Operator& matrix() const noexcept { return m_; }
    Eigen::Index hilbert_dim() const noexcept { return d_; }

    /// L applied to a (not necessarily physical) matrix.
    Operator apply(const Operator& rho) const;

private:
    Operator m_;
    Eigen::Index d_;
};

/// Assemble the Liouvillian from an effective Hamiltonian that already
/// carries -(i/2) sum Gamma L^dag L, plus the recycling terms of `jumps`.
Superoperator build_liouvillian(const Operator& h_eff, const std::vector<RealizedJump>& jumps);

/// Convenience: effective Hamiltonian and jumps straight from a spec.
Superoperator build_liouvillian(const SystemSpec& spec, const std::vector<JumpOperator>& jumps);

enum class NessMethod {
    spectrum,     ///< dense spectrum, eigenvector of the eigenvalue nearest zero
    kernel_solve, ///< one LU solve with a row replaced by the trace condition
    sparse_lu,    ///< kernel_solve on a sparse Liouvillian (see ness_sparse)
};

struct NessOptions {
    NessMethod method = NessMethod::spectrum;
    double zero_tolerance = 1e-8;       ///< |eps| below this counts as zero
    double degeneracy_tolerance = 1e-8; ///< a second |eps| below this is a degenerate manifold
    double clip = -1e-8;                ///< negative-eigenvalue clipping threshold
};

struct NessResult {
    DensityMatrix rho;
    Complex eigenvalue;  ///< the eigenvalue nearest zero (NaN for kernel_solve)
    double residual = 0; ///< |L rho|_2 for the returned state
    double gap = 0;      ///< smallest |Re eps| over the remaining spectrum (NaN for kernel_solve)
};

/// Non-equilibrium steady state, Hermitized and trace-normalized with small
/// negative eigenvalues clipped.
/// With the spectrum method: the eigenvector of the eigenvalue nearest zero;
/// throws InvariantViolation if no eigenvalue is within zero_tolerance or if
/// more than one is within degeneracy_tolerance. With kernel_solve: the
/// solution of L rho = 0, Tr rho = 1; throws if that system is numerically
/// singular (a degenerate steady manifold) or its residual exceeds
/// zero_tolerance.
NessResult ness(const Superoperator& l, const NessOptions& options = {});

using SparseOperator = Eigen::SparseMatrix<Complex>;

/// Sparse assembly of the same Liouvillian, without the dense d^2 x d^2 matrix.
SparseOperator build_liouvillian_sparse(const Operator& h_eff,
                                        const std::vector<RealizedJump>& jumps);

/// The kernel_solve steady state computed with a sparse LU factorization.
/// Much cheaper than the dense paths for six sites; eigenvalue and gap are
/// reported as NaN.
NessResult ness_sparse(const Operator& h_eff, const std::vector<RealizedJump>& jumps,
                       const NessOptions& options = {});

/// 2x2 closed-form steady state for H = lambda s^x, L = s^-, rate gamma.
DensityMatrix two_level_ness_analytic(double lambda, double gamma);

struct Spectrum {
    Eigen::VectorXcd values; ///< sorted by descending real part
    double max_real_part = 0.0;
    double gap = 0.0; ///< -Re of the second eigenvalue (0 if fewer than two)
};

/// Full spectrum. Throws InvariantViolation if an eigenvalue has real part
/// above 1e-9 * max(1, |L|_max).
Spectrum liouvillian_spectrum(const Superoperator& l);

} // namespace epspin
