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

// Scalar diagnostics of density matrices: purity, Uhlmann fidelity, von
// Neumann entropy, quantum mutual information, spin correlators and
// per-site magnetization.

#include <vector>

#include "epspin/density_matrix.hpp"

namespace epspin {

/// Tr rho^2
double purity(const DensityMatrix& rho);

/// Uhlmann fidelity in the squared convention, (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
/// Square roots come from Hermitian eigendecompositions with eigenvalues in
/// [-1e-8, 0) clipped to zero; the result is clamped into [0, 1].
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Square-root convention Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double uhlmann_fidelity_root(const DensityMatrix& rho, const DensityMatrix& sigma);

/// <phi| rho |phi> for a pure reference state (phi is normalized here).
double fidelity_with_pure(const DensityMatrix& rho, const Ket& phi);

/// -sum p ln p over the spectrum; eigenvalues at or below 1e-14 contribute 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Bipartition of sites 1..n_sites into two nonempty complementary sets.
class Partition {
public:
    /// part_a as given (1-based); part_b is its complement.
    Partition(int n_sites, std::vector<int> part_a);

    int n_sites() const noexcept { return n_sites_; }
    const std::vector<int>& part_a() const noexcept { return a_; }
    const std::vector<int>& part_b() const noexcept { return b_; }

private:
    int n_sites_;
    std::vector<int> a_;
    std::vector<int> b_;
};

/// S(rho_A) + S(rho_B) - S(rho_AB), clipped at zero when above -1e-9.
double mutual_information(const DensityMatrix& rho, const Partition& p);

/// Tr(rho s_i^+ s_j^-)
Complex correlator(const DensityMatrix& rho, int i, int j);

enum class Axis { x, y, z };

/// <s_i^axis> for every site i.
std::vector<double> magnetization(const DensityMatrix& rho, Axis axis);

/// (1/2) |rho - sigma|_1
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Operator& rho, const Operator& sigma);

} // namespace epspin
