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

#include "epspin/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "epspin/rng.hpp"

namespace epspin {

namespace {

Eigen::Index dim_of(int n_sites)
{
    return Eigen::Index{1} << n_sites;
}

int spin_bit(Eigen::Index b, int site, int n_sites)
{
    return static_cast<int>((b >> (n_sites - site)) & 1);
}

// +1/2 for up (bit 0), -1/2 for down.
double sz_value(Eigen::Index b, int site, int n_sites)
{
    return spin_bit(b, site, n_sites) == 0 ? 0.5 : -0.5;
}

SitePair canonical(int i, int j)
{
    return i < j ? SitePair{i, j} : SitePair{j, i};
}

// exp(-i pi s^x / 2) = (I - i sigma^x) / sqrt(2)
Operator half_pi_x_rotation()
{
    Operator r(2, 2);
    const double a = std::numbers::sqrt2 / 2.0;
    r << Complex{a, 0.0}, Complex{0.0, -a}, Complex{0.0, -a}, Complex{a, 0.0};
    return r;
}

void check_site(int site, int n_sites, const char* what)
{
    if (site < 1 || site > n_sites) {
        throw std::invalid_argument(std::string(what) + ": site " + std::to_string(site)
                                    + " outside [1, " + std::to_string(n_sites) + "]");
    }
}

} // namespace

void validate(const SystemSpec& spec)
{
    if (spec.n_sites < 1 || spec.n_sites > kMaxSites) {
        throw std::invalid_argument("n_sites must lie in [1, " + std::to_string(kMaxSites) + "]");
    }
    const auto n = static_cast<std::size_t>(spec.n_sites);
    if (spec.field_strengths.size() != n) {
        throw std::invalid_argument("field_strengths must have one entry per site");
    }
    if (spec.dissipation_rates.size() != n) {
        throw std::invalid_argument("dissipation_rates must have one entry per site");
    }
    for (double r : spec.dissipation_rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("dissipation rates must be finite and >= 0");
        }
    }
    for (double l : spec.field_strengths) {
        if (!std::isfinite(l)) {
            throw std::invalid_argument("field strengths must be finite");
        }
    }
    if (!(spec.disorder_bound >= 0.0) || !std::isfinite(spec.disorder_bound)) {
        throw std::invalid_argument("disorder bound must be finite and >= 0");
    }
    for (const auto* bonds : {&spec.couplings, &spec.anisotropy}) {
        for (const auto& [pair, value] : *bonds) {
            if (pair.first >= pair.second) {
                throw std::invalid_argument("bond (" + std::to_string(pair.first) + ", "
                                            + std::to_string(pair.second)
                                            + ") must satisfy i < j (no self-coupling)");
            }
            if (pair.first < 1 || pair.second > spec.n_sites) {
                throw std::invalid_argument("bond site outside [1, n_sites]");
            }
            if (!std::isfinite(value)) {
                throw std::invalid_argument("bond strengths must be finite");
            }
        }
    }
}

SystemSpec empty_system(int n_sites)
{
    SystemSpec spec;
    spec.n_sites = n_sites;
    spec.field_strengths.assign(static_cast<std::size_t>(std::max(n_sites, 0)), 0.0);
    spec.dissipation_rates.assign(static_cast<std::size_t>(std::max(n_sites, 0)), 0.0);
    return spec;
}

void add_heisenberg_bond(SystemSpec& spec, int i, int j, double coupling)
{
    if (i == j) {
        throw std::invalid_argument("add_heisenberg_bond: self-coupling");
    }
    const SitePair key = canonical(i, j);
    spec.couplings[key] = coupling;
    spec.anisotropy[key] = -coupling;
}

bool at_heisenberg_point(const SystemSpec& spec, double tol)
{
    auto value_or_zero = [](const std::map<SitePair, double>& m, const SitePair& k) {
        const auto it = m.find(k);
        return it == m.end() ? 0.0 : it->second;
    };
    for (const auto* bonds : {&spec.couplings, &spec.anisotropy}) {
        for (const auto& entry : *bonds) {
            const double j = value_or_zero(spec.couplings, entry.first);
            const double delta = value_or_zero(spec.anisotropy, entry.first);
            if (std::abs(delta + j) > tol) {
                return false;
            }
        }
    }
    return true;
}

std::string to_string(Geometry g)
{
    switch (g) {
    case Geometry::chain:
        return "chain";
    case Geometry::complete_graph:
        return "complete_graph";
    case Geometry::fig_illu:
        return "fig_illu";
    }
    return "chain";
}

Geometry geometry_from_string(const std::string& name)
{
    if (name == "chain") {
        return Geometry::chain;
    }
    if (name == "complete_graph") {
        return Geometry::complete_graph;
    }
    if (name == "fig_illu") {
        return Geometry::fig_illu;
    }
    throw std::invalid_argument("unknown geometry '" + name + "'");
}

SystemSpec make_preset(Geometry geometry, int n_sites, double coupling, double lambda,
                       double gamma, int drive_site)
{
    if (geometry == Geometry::fig_illu) {
        n_sites = 6;
        drive_site = 3;
    }
    SystemSpec spec = empty_system(n_sites);
    check_site(drive_site, n_sites, "make_preset");
    switch (geometry) {
    case Geometry::chain:
        for (int i = 1; i < n_sites; ++i) {
            add_heisenberg_bond(spec, i, i + 1, coupling);
        }
        break;
    case Geometry::complete_graph:
        for (int i = 1; i <= n_sites; ++i) {
            for (int j = i + 1; j <= n_sites; ++j) {
                add_heisenberg_bond(spec, i, j, coupling);
            }
        }
        break;
    case Geometry::fig_illu:
        for (int i = 1; i < n_sites; ++i) {
            add_heisenberg_bond(spec, i, i + 1, coupling);
        }
        break;
    }
    spec.field_strengths[static_cast<std::size_t>(drive_site - 1)] = lambda;
    spec.dissipation_rates[static_cast<std::size_t>(drive_site - 1)] = gamma;
    return spec;
}

Operator build_heisenberg(const SystemSpec& spec)
{
    validate(spec);
    const int n = spec.n_sites;
    const Eigen::Index dim = dim_of(n);
    Operator h = Operator::Zero(dim, dim);

    // Both orderings of each pair: the flip-flop term contributes -J once per
    // unordered pair, the zz term 2 Delta s_i^z s_j^z.
    for (const auto& [pair, j] : spec.couplings) {
        if (j == 0.0) {
            continue;
        }
        const auto [a, b] = pair;
        const Eigen::Index mask = (Eigen::Index{1} << (n - a)) | (Eigen::Index{1} << (n - b));
        for (Eigen::Index col = 0; col < dim; ++col) {
            if (spin_bit(col, a, n) != spin_bit(col, b, n)) {
                h(col ^ mask, col) += -j;
            }
        }
    }
    for (const auto& [pair, delta] : spec.anisotropy) {
        if (delta == 0.0) {
            continue;
        }
        const auto [a, b] = pair;
        for (Eigen::Index col = 0; col < dim; ++col) {
            h(col, col) += 2.0 * delta * sz_value(col, a, n) * sz_value(col, b, n);
        }
    }
    return h;
}

Operator build_field(const SystemSpec& spec)
{
    validate(spec);
    const int n = spec.n_sites;
    const Eigen::Index dim = dim_of(n);
    Operator h = Operator::Zero(dim, dim);
    for (int i = 1; i <= n; ++i) {
        const double lambda = spec.field_strengths[static_cast<std::size_t>(i - 1)];
        if (lambda == 0.0) {
            continue;
        }
        const Eigen::Index flip = Eigen::Index{1} << (n - i);
        for (Eigen::Index col = 0; col < dim; ++col) {
            h(col ^ flip, col) += 0.5 * lambda;
        }
    }
    return h;
}

std::vector<double> disorder_fields(const SystemSpec& spec)
{
    validate(spec);
    std::vector<double> fields(static_cast<std::size_t>(spec.n_sites), 0.0);
    if (spec.disorder_bound == 0.0) {
        return fields;
    }
    CounterRng rng(spec.disorder_seed, spec.disorder_realization);
    for (double& h : fields) {
        h = rng.uniform(-spec.disorder_bound, spec.disorder_bound);
    }
    return fields;
}

Operator build_disorder(const SystemSpec& spec)
{
    const std::vector<double> fields = disorder_fields(spec);
    const int n = spec.n_sites;
    const Eigen::Index dim = dim_of(n);
    Operator h = Operator::Zero(dim, dim);
    for (int i = 1; i <= n; ++i) {
        const double hi = fields[static_cast<std::size_t>(i - 1)];
        if (hi == 0.0) {
            continue;
        }
        for (Eigen::Index col = 0; col < dim; ++col) {
            h(col, col) += hi * sz_value(col, i, n);
        }
    }
    return h;
}

Operator build_hamiltonian(const SystemSpec& spec)
{
    return build_heisenberg(spec) + build_field(spec) + build_disorder(spec);
}

std::string to_string(JumpRotation r)
{
    switch (r) {
    case JumpRotation::none:
        return "none";
    case JumpRotation::collective_x_half_pi:
        return "collective_x_half_pi";
    case JumpRotation::local_x_half_pi:
        return "local_x_half_pi";
    }
    return "none";
}

JumpRotation rotation_from_string(const std::string& name)
{
    if (name == "none") {
        return JumpRotation::none;
    }
    if (name == "collective_x_half_pi") {
        return JumpRotation::collective_x_half_pi;
    }
    if (name == "local_x_half_pi") {
        return JumpRotation::local_x_half_pi;
    }
    throw std::invalid_argument("unknown jump rotation '" + name + "'");
}

std::vector<JumpOperator> jumps_from_spec(const SystemSpec& spec, JumpRotation rotation)
{
    validate(spec);
    std::vector<JumpOperator> jumps;
    for (int i = 1; i <= spec.n_sites; ++i) {
        const double rate = spec.dissipation_rates[static_cast<std::size_t>(i - 1)];
        if (rate > 0.0) {
            jumps.push_back({i, rate, rotation});
        }
    }
    return jumps;
}

Operator collective_rotation(int n_sites)
{
    if (n_sites < 1 || n_sites > kMaxSites) {
        throw std::invalid_argument("collective_rotation: bad number of sites");
    }
    const Operator r = half_pi_x_rotation();
    Operator out = r;
    for (int i = 2; i <= n_sites; ++i) {
        out = kron(out, r);
    }
    return out;
}

Operator local_rotation(int site, int n_sites)
{
    return embed_site(half_pi_x_rotation(), site, n_sites);
}

Operator realize_jump(const JumpOperator& jump, int n_sites)
{
    check_site(jump.site, n_sites, "realize_jump");
    const Operator lower = single_site(SpinKind::minus);
    switch (jump.rotation) {
    case JumpRotation::none:
        return embed_site(lower, jump.site, n_sites);
    case JumpRotation::local_x_half_pi:
        return embed_site(half_pi_x_rotation() * lower, jump.site, n_sites);
    case JumpRotation::collective_x_half_pi: {
        // (prod_j R_j) s_k^- factorizes site by site.
        const Operator r = half_pi_x_rotation();
        Operator out = jump.site == 1 ? Operator(r * lower) : r;
        for (int i = 2; i <= n_sites; ++i) {
            out = kron(out, i == jump.site ? Operator(r * lower) : r);
        }
        return out;
    }
    }
    throw std::invalid_argument("realize_jump: unknown rotation");
}

std::vector<RealizedJump> realize_jumps(const std::vector<JumpOperator>& jumps, int n_sites)
{
    std::vector<RealizedJump> out;
    out.reserve(jumps.size());
    for (const auto& j : jumps) {
        if (!(j.rate >= 0.0)) {
            throw std::invalid_argument("jump rate must be >= 0");
        }
        out.push_back({realize_jump(j, n_sites), j.rate});
    }
    return out;
}

Operator build_effective_nonhermitian(const SystemSpec& spec,
                                      const std::vector<JumpOperator>& jumps)
{
    Operator h = build_hamiltonian(spec);
    const int n = spec.n_sites;
    // L^dag L = s_k^+ s_k^- for every rotation tag: the projector on site k up.
    for (const auto& j : jumps) {
        check_site(j.site, n, "build_effective_nonhermitian");
        if (!(j.rate >= 0.0)) {
            throw std::invalid_argument("jump rate must be >= 0");
        }
        for (Eigen::Index col = 0; col < h.rows(); ++col) {
            if (spin_bit(col, j.site, n) == 0) {
                h(col, col) += Complex{0.0, -0.5 * j.rate};
            }
        }
    }
    return h;
}

Operator local_complex_field(int site, int n_sites, double lambda, double gamma)
{
    const Operator up = site_operator(SpinKind::plus, site, n_sites)
                        * site_operator(SpinKind::minus, site, n_sites);
    return lambda * site_operator(SpinKind::x, site, n_sites) - Complex{0.0, 0.5 * gamma} * up;
}

Ket coalescent_state(int n_sites)
{
    // Each site: exp(-i pi s^x / 2)|down> = -i (1, i)^T / sqrt(2); drop the phase.
    if (n_sites < 1 || n_sites > kMaxSites) {
        throw std::invalid_argument("coalescent_state: bad number of sites");
    }
    Ket site(2);
    site << Complex{1.0, 0.0}, Complex{0.0, 1.0};
    site /= std::numbers::sqrt2;
    Ket out = site;
    for (int i = 2; i <= n_sites; ++i) {
        Ket next(out.size() * 2);
        for (Eigen::Index a = 0; a < out.size(); ++a) {
            next[2 * a] = out[a] * site[0];
            next[2 * a + 1] = out[a] * site[1];
        }
        out = std::move(next);
    }
    return out;
}

Ket apply_total_lowering(const Ket& psi, int n_sites)
{
    if (psi.size() != dim_of(n_sites)) {
        throw std::invalid_argument("apply_total_lowering: dimension mismatch");
    }
    Ket out = Ket::Zero(psi.size());
    for (Eigen::Index b = 0; b < psi.size(); ++b) {
        if (psi[b] == Complex{}) {
            continue;
        }
        for (int i = 1; i <= n_sites; ++i) {
            if (spin_bit(b, i, n_sites) == 0) {
                out[b | (Eigen::Index{1} << (n_sites - i))] += psi[b];
            }
        }
    }
    return out;
}

DickeBasis dicke_basis(int n_sites)
{
    if (n_sites < 1 || n_sites > kMaxSites) {
        throw std::invalid_argument("dicke_basis: bad number of sites");
    }
    DickeBasis basis{n_sites, {}};
    Ket current = all_up(n_sites);
    for (int n = 1; n <= n_sites + 1; ++n) {
        current.normalize();
        basis.kets.push_back(current);
        current = apply_total_lowering(current, n_sites);
    }
    return basis;
}

Operator w_matrix_closed_form(int n_sites, double lambda, double gamma)
{
    if (n_sites < 1) {
        throw std::invalid_argument("w_matrix_closed_form: n_sites must be >= 1");
    }
    const int dim = n_sites + 1;
    Operator w = Operator::Zero(dim, dim);
    const double norm = 2.0 * n_sites;
    for (int n = 1; n <= n_sites; ++n) {
        const double c = std::sqrt(static_cast<double>(n) * (n_sites + 1 - n)) / norm;
        w(n - 1, n) = c * (lambda - 0.5 * gamma); // <G_n| . |G_{n+1}>
        w(n, n - 1) = c * (lambda + 0.5 * gamma); // <G_{n+1}| . |G_n>
    }
    return w;
}

Operator project_subspace(const Operator& op, const DickeBasis& basis, Frame frame)
{
    const Eigen::Index dim = dim_of(basis.n_sites);
    if (op.rows() != dim || op.cols() != dim) {
        throw std::invalid_argument("project_subspace: operator dimension mismatch");
    }
    const auto k = static_cast<Eigen::Index>(basis.kets.size());
    Eigen::MatrixXcd b(dim, k);
    for (Eigen::Index n = 0; n < k; ++n) {
        b.col(n) = basis.kets[static_cast<std::size_t>(n)];
    }
    if (frame == Frame::collective_rotation) {
        b = collective_rotation(basis.n_sites) * b;
    }
    return b.adjoint() * op * b;
}

ProjectionFit fit_projection(const Operator& projected, const Operator& closed)
{
    if (projected.rows() != closed.rows() || projected.cols() != closed.cols()) {
        throw std::invalid_argument("fit_projection: dimension mismatch");
    }
    const Eigen::Index n = projected.rows();
    ProjectionFit fit;
    fit.shift = projected.trace() / static_cast<double>(n);
    const Operator centered = projected - fit.shift * Operator::Identity(n, n);
    const double denom = closed.squaredNorm();
    fit.scale = denom > 0.0 ? closed.conjugate().cwiseProduct(centered).sum() / denom
                            : Complex{};
    fit.residual = max_abs(centered - fit.scale * closed);
    return fit;
}

} // namespace epspin
