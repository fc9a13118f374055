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

#include "epspin/spin_core.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "epspin/errors.hpp"

namespace epspin {

namespace {

void check_sites(int site, int n_sites)
{
    if (n_sites < 1 || n_sites > kMaxSites) {
        throw std::out_of_range("number of sites " + std::to_string(n_sites)
                                + " outside [1, " + std::to_string(kMaxSites) + "]");
    }
    if (site < 1 || site > n_sites) {
        throw std::out_of_range("site " + std::to_string(site) + " outside [1, "
                                + std::to_string(n_sites) + "]");
    }
}

} // namespace

Operator single_site(SpinKind kind)
{
    Operator s = Operator::Zero(2, 2);
    switch (kind) {
    case SpinKind::plus:
        s(0, 1) = 1.0;
        break;
    case SpinKind::minus:
        s(1, 0) = 1.0;
        break;
    case SpinKind::x:
        s(0, 1) = 0.5;
        s(1, 0) = 0.5;
        break;
    case SpinKind::y:
        s(0, 1) = Complex{0.0, -0.5};
        s(1, 0) = Complex{0.0, 0.5};
        break;
    case SpinKind::z:
        s(0, 0) = 0.5;
        s(1, 1) = -0.5;
        break;
    }
    return s;
}

Operator embed_site(const Operator& single, int site, int n_sites)
{
    check_sites(site, n_sites);
    if (single.rows() != 2 || single.cols() != 2) {
        throw std::invalid_argument("embed_site: single-site factor must be 2x2");
    }
    const Eigen::Index dim = Eigen::Index{1} << n_sites;
    const int shift = n_sites - site;
    Operator out = Operator::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int bit = static_cast<int>((col >> shift) & 1);
        const Eigen::Index cleared = col & ~(Eigen::Index{1} << shift);
        for (int r = 0; r < 2; ++r) {
            const Complex v = single(r, bit);
            if (v != Complex{}) {
                out(cleared | (Eigen::Index{r} << shift), col) += v;
            }
        }
    }
    return out;
}

Operator site_operator(SpinKind kind, int site, int n_sites)
{
    return embed_site(single_site(kind), site, n_sites);
}

Operator total_spin(SpinKind kind, int n_sites)
{
    check_sites(1, n_sites);
    const Eigen::Index dim = Eigen::Index{1} << n_sites;
    Operator out = Operator::Zero(dim, dim);
    for (int i = 1; i <= n_sites; ++i) {
        out += site_operator(kind, i, n_sites);
    }
    return out;
}

Operator kron(const Operator& a, const Operator& b)
{
    if (a.rows() * b.rows() > kMaxDimension || a.cols() * b.cols() > kMaxDimension) {
        throw std::length_error("kron: result dimension exceeds "
                                + std::to_string(kMaxDimension));
    }
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Operator identity(Eigen::Index dim)
{
    return Operator::Identity(dim, dim);
}

Ket basis_ket(int n_sites, std::uint64_t index)
{
    check_sites(1, n_sites);
    const Eigen::Index dim = Eigen::Index{1} << n_sites;
    if (index >= static_cast<std::uint64_t>(dim)) {
        throw std::out_of_range("basis index out of range");
    }
    Ket k = Ket::Zero(dim);
    k[static_cast<Eigen::Index>(index)] = 1.0;
    return k;
}

Ket all_up(int n_sites)
{
    return basis_ket(n_sites, 0);
}

Ket all_down(int n_sites)
{
    return basis_ket(n_sites, (std::uint64_t{1} << n_sites) - 1);
}

int sites_for_dimension(Eigen::Index dim)
{
    if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
        throw std::invalid_argument("dimension " + std::to_string(dim)
                                    + " is not a power of two");
    }
    return std::countr_zero(static_cast<std::uint64_t>(dim));
}

Operator commutator(const Operator& a, const Operator& b)
{
    return a * b - b * a;
}

double max_abs(const Operator& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& a, double tol)
{
    return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

EigenDecomposition eig_general(const Operator& a)
{
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("eig_general: matrix is not square");
    }
    if (!a.allFinite()) {
        throw std::domain_error("eig_general: non-finite entries");
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, true);
    if (solver.info() != Eigen::Success) {
        throw Error("eig_general: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXcd eigenvalues(const Operator& a)
{
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("eigenvalues: matrix is not square");
    }
    if (!a.allFinite()) {
        throw std::domain_error("eigenvalues: non-finite entries");
    }
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a, false);
    if (schur.info() != Eigen::Success) {
        throw Error("eigenvalues: Schur decomposition did not converge");
    }
    return schur.matrixT().diagonal();
}

HermitianEigen herm_eig(const Operator& a)
{
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("herm_eig: matrix is not square");
    }
    const double tol = 1e-10 * std::max(1.0, max_abs(a));
    if (!is_hermitian(a, tol)) {
        throw std::invalid_argument("herm_eig: matrix is not Hermitian");
    }
    const Operator sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error("herm_eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Operator partial_trace(const Operator& rho, std::span<const int> keep)
{
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("partial_trace: matrix is not square");
    }
    const int n = sites_for_dimension(rho.rows());
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.empty()) {
        throw std::invalid_argument("partial_trace: empty site set");
    }
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw std::invalid_argument("partial_trace: duplicate sites");
    }
    if (kept.front() < 1 || kept.back() > n) {
        throw std::out_of_range("partial_trace: site outside [1, " + std::to_string(n) + "]");
    }

    const int n_keep = static_cast<int>(kept.size());
    const Eigen::Index dim = rho.rows();
    const Eigen::Index dim_keep = Eigen::Index{1} << n_keep;
    std::vector<int> traced;
    for (int s = 1; s <= n; ++s) {
        if (!std::binary_search(kept.begin(), kept.end(), s)) {
            traced.push_back(s);
        }
    }

    // Split a full index into its kept and traced parts (both MSB = lowest site).
    auto gather = [n](Eigen::Index full, const std::vector<int>& sites) {
        Eigen::Index out = 0;
        for (int s : sites) {
            out = (out << 1) | ((full >> (n - s)) & 1);
        }
        return out;
    };
    const Eigen::Index dim_traced = dim / dim_keep;
    std::vector<Eigen::Index> kept_of(dim), traced_of(dim), full_of(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        kept_of[b] = gather(b, kept);
        traced_of[b] = gather(b, traced);
        full_of[kept_of[b] * dim_traced + traced_of[b]] = b;
    }

    Operator out = Operator::Zero(dim_keep, dim_keep);
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index kb = 0; kb < dim_keep; ++kb) {
            const Eigen::Index b = full_of[kb * dim_traced + traced_of[a]];
            out(kept_of[a], kb) += rho(a, b);
        }
    }
    return out;
}

} // namespace epspin
