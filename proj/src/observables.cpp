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

#include "epspin/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "epspin/errors.hpp"

namespace epspin {

namespace {

constexpr double kClip = -1e-8;
constexpr double kFidelitySlack = 1e-9;
constexpr double kEntropyFloor = 1e-14;

std::string sci(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

double clipped_sqrt(double x)
{
    if (x < kClip) {
        throw InvariantViolation("positive", "eigenvalue " + sci(x) + " below clip");
    }
    return x > 0.0 ? std::sqrt(x) : 0.0;
}

// Square root of the spectrum with eigenvalues below the rounding floor of
// the decomposition set to zero. Without the floor, d - 1 rounding-level
// eigenvalues of a nearly pure state add about d * 1e-8 to the sum.
Operator floored_sqrt(const HermitianEigen& eig, double* trace_of_root)
{
    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    const double floor = 64.0 * std::numeric_limits<double>::epsilon()
                         * static_cast<double>(eig.values.size()) * scale;
    double sum = 0.0;
    Operator root = hermitian_function(eig, [&](double x) {
        double r = clipped_sqrt(x);
        if (x <= floor) {
            r = 0.0;
        }
        sum += r;
        return r;
    });
    if (trace_of_root != nullptr) {
        *trace_of_root = sum;
    }
    return root;
}

void same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what)
{
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

double entropy_of(const Operator& m)
{
    const HermitianEigen eig = herm_eig(0.5 * (m + m.adjoint()));
    double s = 0.0;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        const double p = eig.values[k];
        if (p > kEntropyFloor) {
            s -= p * std::log(p);
        }
    }
    return s;
}

} // namespace

double purity(const DensityMatrix& rho)
{
    // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
    return rho.matrix().squaredNorm();
}

double uhlmann_fidelity_root(const DensityMatrix& rho, const DensityMatrix& sigma)
{
    same_dim(rho, sigma, "uhlmann_fidelity");
    const Operator sqrt_rho = floored_sqrt(herm_eig(rho.matrix()), nullptr);
    Operator inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    inner = 0.5 * (inner + inner.adjoint());
    double root = 0.0;
    floored_sqrt(herm_eig(inner), &root);
    if (root > 1.0 + kFidelitySlack) {
        throw InvariantViolation("fidelity-bounded", "root fidelity " + sci(root) + " above 1");
    }
    return std::clamp(root, 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma)
{
    const double root = uhlmann_fidelity_root(rho, sigma);
    return root * root;
}

double fidelity_with_pure(const DensityMatrix& rho, const Ket& phi)
{
    if (phi.size() != rho.dim()) {
        throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
    }
    const double norm2 = phi.squaredNorm();
    if (!(norm2 > 0.0)) {
        throw std::invalid_argument("fidelity_with_pure: zero reference ket");
    }
    const double f = (phi.adjoint() * rho.matrix() * phi)(0, 0).real() / norm2;
    return std::clamp(f, 0.0, 1.0);
}

double von_neumann_entropy(const DensityMatrix& rho)
{
    return entropy_of(rho.matrix());
}

Partition::Partition(int n_sites, std::vector<int> part_a) : n_sites_(n_sites), a_(std::move(part_a))
{
    if (n_sites < 2) {
        throw std::invalid_argument("Partition: need at least two sites");
    }
    std::sort(a_.begin(), a_.end());
    if (a_.empty() || std::adjacent_find(a_.begin(), a_.end()) != a_.end()) {
        throw std::invalid_argument("Partition: part A must be nonempty without duplicates");
    }
    if (a_.front() < 1 || a_.back() > n_sites) {
        throw std::out_of_range("Partition: site outside [1, " + std::to_string(n_sites) + "]");
    }
    for (int s = 1; s <= n_sites; ++s) {
        if (!std::binary_search(a_.begin(), a_.end(), s)) {
            b_.push_back(s);
        }
    }
    if (b_.empty()) {
        throw std::invalid_argument("Partition: part B is empty");
    }
}

double mutual_information(const DensityMatrix& rho, const Partition& p)
{
    if (rho.n_sites() != p.n_sites()) {
        throw std::invalid_argument("mutual_information: partition and state disagree on size");
    }
    const double s_a = entropy_of(partial_trace(rho.matrix(), p.part_a()));
    const double s_b = entropy_of(partial_trace(rho.matrix(), p.part_b()));
    const double i_ab = s_a + s_b - entropy_of(rho.matrix());
    if (i_ab < -1e-9) {
        throw InvariantViolation("subadditivity", "mutual information " + sci(i_ab));
    }
    return std::max(i_ab, 0.0);
}

Complex correlator(const DensityMatrix& rho, int i, int j)
{
    const int n = rho.n_sites();
    const Operator op = site_operator(SpinKind::plus, i, n) * site_operator(SpinKind::minus, j, n);
    return rho.expectation(op);
}

std::vector<double> magnetization(const DensityMatrix& rho, Axis axis)
{
    const SpinKind kind = axis == Axis::x ? SpinKind::x
                          : axis == Axis::y ? SpinKind::y
                                            : SpinKind::z;
    const int n = rho.n_sites();
    std::vector<double> m(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        m[static_cast<std::size_t>(i - 1)] = rho.expectation(site_operator(kind, i, n)).real();
    }
    return m;
}

double trace_distance(const Operator& rho, const Operator& sigma)
{
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    const Operator diff = rho - sigma;
    const HermitianEigen eig = herm_eig(0.5 * (diff + diff.adjoint()));
    return 0.5 * eig.values.cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma)
{
    return trace_distance(rho.matrix(), sigma.matrix());
}

} // namespace epspin
