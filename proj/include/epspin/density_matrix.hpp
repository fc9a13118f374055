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

#include "epspin/spin_core.hpp"

namespace epspin {

struct DensityTolerances {
    double hermitian = 1e-10;
    double trace = 1e-10;
    double min_eigenvalue = -1e-8;
};

/// Hermitian, unit-trace, positive semidefinite operator. Every instance
/// has passed validation against DensityTolerances at construction.
class DensityMatrix {
public:
    /// Validates `m` as is; throws InvariantViolation naming the failed check.
    static DensityMatrix from_matrix(Operator m, const DensityTolerances& tol = {});

    /// Hermitizes and trace-normalizes `m`; eigenvalues in [clip, 0) are set
    /// to zero and the result renormalized. Anything below `clip` throws.
    static DensityMatrix sanitized(const Operator& m, double clip = -1e-8);

    /// |psi><psi| / <psi|psi>.
    static DensityMatrix from_ket(const Ket& psi);

    static DensityMatrix maximally_mixed(Eigen::Index dim);

    const Operator& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    int n_sites() const { return sites_for_dimension(m_.rows()); }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    /// Tr(rho * op)
    Complex expectation(const Operator& op) const;

private:
    explicit DensityMatrix(Operator m) : m_(std::move(m)) {}

    Operator m_;
};

/// Reduced state on the kept sites.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

} // namespace epspin
