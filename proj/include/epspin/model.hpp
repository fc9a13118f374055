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

// Spin-model builders: Heisenberg couplings, a local transverse field,
// random longitudinal disorder, dissipation channels with optional
// feedback rotation, and the fully symmetric (Dicke) sector.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "epspin/spin_core.hpp"

namespace epspin {

using SitePair = std::pair<int, int>; ///< 1-based, stored with first < second

/// Declarative description of the spin model. Energies and rates share one
/// unit (the scenarios use the dissipation rate gamma as that unit).
struct SystemSpec {
    int n_sites = 1;
    std::map<SitePair, double> couplings;  ///< J_ij
    std::map<SitePair, double> anisotropy; ///< Delta_ij (zz coefficient)
    std::vector<double> field_strengths;   ///< lambda_i, field along +x
    std::vector<double> dissipation_rates; ///< Gamma_i >= 0
    double disorder_bound = 0.0;           ///< h_i drawn from (-h, h)
    std::uint64_t disorder_seed = 0;
    std::uint64_t disorder_realization = 0;
};

/// Throws std::invalid_argument on out-of-range sites, self-couplings,
/// mis-sized per-site vectors, negative rates or a negative disorder bound.
void validate(const SystemSpec& spec);

/// SystemSpec of `n_sites` free spins.
SystemSpec empty_system(int n_sites);

/// Adds an SU(2)-symmetric bond: J_ij = j, Delta_ij = -j. With the sign
/// convention of build_heisenberg this is the isotropic ferromagnet
/// -j (s_i . s_j) summed over both orderings of (i, j).
void add_heisenberg_bond(SystemSpec& spec, int i, int j, double coupling);

/// True iff every bond has Delta_ij = -J_ij (within tol), i.e. the
/// Heisenberg part commutes with the total spin.
bool at_heisenberg_point(const SystemSpec& spec, double tol = 1e-12);

enum class Geometry { chain, complete_graph, fig_illu };

std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& name);

/// Preset with SU(2) bonds of strength `coupling`. The drive site carries a
/// field `lambda` and a dissipation rate `gamma`. fig_illu is the open six-site chain
/// with the drive on site 3 and ignores `n_sites`/`drive_site`.
SystemSpec make_preset(Geometry geometry, int n_sites, double coupling, double lambda,
                       double gamma, int drive_site = 1);

/// H_spin = -sum_{i != j} (J_ij / 2)(s_i+ s_j- + s_i- s_j+) + sum_{i != j} Delta_ij s_iz s_jz
Operator build_heisenberg(const SystemSpec& spec);

/// sum_i lambda_i s_i^x
Operator build_field(const SystemSpec& spec);

/// The disorder fields h_i in site order for the spec's (seed, realization).
std::vector<double> disorder_fields(const SystemSpec& spec);

/// sum_i h_i s_i^z
Operator build_disorder(const SystemSpec& spec);

/// H_spin + field + disorder (Hermitian).
Operator build_hamiltonian(const SystemSpec& spec);

enum class JumpRotation {
    none,                 ///< L = s_k^-
    collective_x_half_pi, ///< L = prod_j exp(-i pi s_j^x / 2) s_k^-
    local_x_half_pi,      ///< L = exp(-i pi s_k^x / 2) s_k^-
};

std::string to_string(JumpRotation r);
JumpRotation rotation_from_string(const std::string& name);

/// One dissipation channel. The rate is kept separate from the matrix.
struct JumpOperator {
    int site = 1;
    double rate = 0.0;
    JumpRotation rotation = JumpRotation::none;
};

/// One channel per site with a positive dissipation rate.
std::vector<JumpOperator> jumps_from_spec(const SystemSpec& spec, JumpRotation rotation);

struct RealizedJump {
    Operator op;
    double rate = 0.0;
};

/// prod_j exp(-i pi s_j^x / 2)
Operator collective_rotation(int n_sites);

/// exp(-i pi s_site^x / 2) acting on one site.
Operator local_rotation(int site, int n_sites);

Operator realize_jump(const JumpOperator& jump, int n_sites);
std::vector<RealizedJump> realize_jumps(const std::vector<JumpOperator>& jumps, int n_sites);

/// H - (i/2) sum_mu Gamma_mu L_mu^dag L_mu. Rotation tags do not change it.
Operator build_effective_nonhermitian(const SystemSpec& spec,
                                      const std::vector<JumpOperator>& jumps);

/// lambda s_site^x - (i gamma / 2) s_site^+ s_site^-
Operator local_complex_field(int site, int n_sites, double lambda, double gamma);

/// prod_j exp(-i pi s_j^x / 2) |down ... down>: every spin along +y.
Ket coalescent_state(int n_sites);

/// Unit-normalized |G_n> ~ (sum_i s_i^-)^(n-1) |up ... up>, n = 1 .. N+1.
struct DickeBasis {
    int n_sites = 0;
    std::vector<Ket> kets;
};

DickeBasis dicke_basis(int n_sites);

/// sum_i s_i^- applied to a ket without forming the operator.
Ket apply_total_lowering(const Ket& psi, int n_sites);

/// Effective Dicke-sector matrix of the local complex field (dimension N+1,
/// zero diagonal). Coupling between consecutive states n and n+1 (1-based)
/// is sqrt(n (N + 1 - n)) / (2N), times (lambda - gamma/2) above the diagonal
/// and (lambda + gamma/2) below it. At lambda = gamma/2 it is a single
/// lower Jordan block.
Operator w_matrix_closed_form(int n_sites, double lambda, double gamma);

enum class Frame { plain, collective_rotation };

/// <B_m| op |B_n> with B_n = |G_n> (plain) or U|G_n> (collective_rotation).
Operator project_subspace(const Operator& op, const DickeBasis& basis, Frame frame);

/// projected ~ shift * I + scale * closed. The shift is the mean diagonal of
/// `projected` (the closed form is traceless); the scale is a least-squares fit.
struct ProjectionFit {
    Complex shift;
    Complex scale;
    double residual = 0.0; ///< max-abs misfit after shift and scale
};

ProjectionFit fit_projection(const Operator& projected, const Operator& closed);

} // namespace epspin
