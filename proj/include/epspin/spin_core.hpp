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

// Dense complex linear algebra on spin-1/2 Hilbert spaces.
//
// Basis convention: a basis index b encodes one bit per site, site 1 being
// the most significant bit. Spin up maps to bit 0 and spin down to bit 1, so
// the single-site basis is {|up>, |down>} and s+ s- = diag(1, 0).

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace epspin {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest number of sites for Hilbert-space operators (dimension 2^12).
inline constexpr int kMaxSites = 12;
/// Largest number of sites for which a superoperator may be assembled.
inline constexpr int kMaxSuperoperatorSites = 6;
/// Largest matrix dimension any kernel routine will produce.
inline constexpr Eigen::Index kMaxDimension = Eigen::Index{1} << kMaxSites;

enum class SpinKind { plus, minus, x, y, z };

/// 2x2 spin-1/2 matrix of the given kind (s = sigma / 2).
Operator single_site(SpinKind kind);

/// I (x) ... (x) s^kind (x) ... (x) I with the factor at `site` (1-based).
Operator site_operator(SpinKind kind, int site, int n_sites);

/// I (x) ... (x) single (x) ... (x) I for an arbitrary 2x2 `single`.
Operator embed_site(const Operator& single, int site, int n_sites);

/// Sum over all sites of site_operator(kind, i, n_sites).
Operator total_spin(SpinKind kind, int n_sites);

Operator kron(const Operator& a, const Operator& b);

Operator identity(Eigen::Index dim);

/// Computational basis ket |index>; bit (n_sites - i) set means site i is down.
Ket basis_ket(int n_sites, std::uint64_t index);

/// |up up ... up> and |down down ... down>.
Ket all_up(int n_sites);
Ket all_down(int n_sites);

int sites_for_dimension(Eigen::Index dim);

Operator commutator(const Operator& a, const Operator& b);

/// max_ij |a_ij|
double max_abs(const Operator& a);

bool is_hermitian(const Operator& a, double tol);

/// exp(scale * a) by scaling and squaring with a degree-13 Pade approximant.
Operator matrix_exp(const Operator& a, Complex scale = Complex{1.0, 0.0});

struct EigenDecomposition {
    Eigen::VectorXcd values;
    /// Right eigenvectors as columns, unit 2-norm.
    Eigen::MatrixXcd vectors;
};

/// General complex eigenproblem. Defective matrices yield clustered
/// eigenvalues and nearly parallel vectors; no Jordan chains are built.
EigenDecomposition eig_general(const Operator& a);

/// Eigenvalues only (complex Schur form); cheaper than eig_general.
Eigen::VectorXcd eigenvalues(const Operator& a);

struct HermitianEigen {
    RealVector values; ///< ascending
    Eigen::MatrixXcd vectors;
};

/// Spectral decomposition of a Hermitian matrix; rejects inputs whose
/// anti-Hermitian part exceeds 1e-10 (relative to max(1, |a|_max)).
HermitianEigen herm_eig(const Operator& a);

/// Apply f to the eigenvalues of a Hermitian matrix.
template <typename F>
Operator hermitian_function(const HermitianEigen& eig, F&& f)
{
    RealVector mapped(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        mapped[k] = f(eig.values[k]);
    }
    return eig.vectors * mapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

/// Reduced matrix on the kept sites (sorted, 1-based, unique). Works on any
/// square matrix of dimension 2^n_sites; trace is preserved.
Operator partial_trace(const Operator& rho, std::span<const int> keep);

} // namespace epspin
