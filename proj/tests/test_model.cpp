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

#include <doctest.h>

#include <cmath>

#include "epspin/model.hpp"

using namespace epspin;

namespace {

Operator dot_product(int i, int j, int n)
{
    Operator out = Operator::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (auto k : {SpinKind::x, SpinKind::y, SpinKind::z}) {
        out += site_operator(k, i, n) * site_operator(k, j, n);
    }
    return out;
}

} // namespace

TEST_CASE("SU(2) chain equals -2J times the sum of bond dot products")
{
    const int n = 4;
    const double j = 1.3;
    const SystemSpec spec = make_preset(Geometry::chain, n, j, 0.0, 0.0);
    Operator expected = Operator::Zero(16, 16);
    for (int i = 1; i < n; ++i) {
        expected += -2.0 * j * dot_product(i, i + 1, n);
    }
    CHECK(max_abs(build_heisenberg(spec) - expected) < 1e-14);
    CHECK(at_heisenberg_point(spec));
}

TEST_CASE("complete graph couples every pair once")
{
    const SystemSpec spec = make_preset(Geometry::complete_graph, 4, 1.0, 0.0, 0.0);
    CHECK(spec.couplings.size() == 6);
    const Operator h = build_heisenberg(spec);
    for (auto k : {SpinKind::x, SpinKind::y, SpinKind::z}) {
        CHECK(max_abs(commutator(h, total_spin(k, 4))) < 1e-13);
    }
}

TEST_CASE("fig_illu is an open six-site chain driven on site 3")
{
    const SystemSpec spec = make_preset(Geometry::fig_illu, 4, 1.0, 0.5, 1.0, 1);
    CHECK(spec.n_sites == 6);
    CHECK(spec.couplings.size() == 5);
    CHECK(spec.couplings.count({1, 6}) == 0);
    CHECK(spec.field_strengths[2] == 0.5);
    CHECK(spec.dissipation_rates[2] == 1.0);
    CHECK(spec.dissipation_rates[0] == 0.0);
}

TEST_CASE("spec validation")
{
    SystemSpec spec = empty_system(3);
    CHECK_NOTHROW(validate(spec));
    SystemSpec self = spec;
    self.couplings[{2, 2}] = 1.0;
    CHECK_THROWS_AS(validate(self), std::invalid_argument);
    SystemSpec negative = spec;
    negative.dissipation_rates[1] = -0.1;
    CHECK_THROWS_AS(validate(negative), std::invalid_argument);
    SystemSpec short_fields = spec;
    short_fields.field_strengths.pop_back();
    CHECK_THROWS_AS(validate(short_fields), std::invalid_argument);
    SystemSpec outside = spec;
    add_heisenberg_bond(outside, 1, 4, 1.0);
    CHECK_THROWS_AS(validate(outside), std::invalid_argument);
}

TEST_CASE("disorder fields are reproducible, bounded and vary by realization")
{
    SystemSpec spec = make_preset(Geometry::chain, 5, 1.0, 0.5, 1.0);
    spec.disorder_bound = 0.3;
    spec.disorder_seed = 11;
    spec.disorder_realization = 4;
    const auto a = disorder_fields(spec);
    CHECK(a == disorder_fields(spec));
    for (double h : a) {
        CHECK(std::abs(h) < 0.3);
    }
    spec.disorder_realization = 5;
    CHECK(a != disorder_fields(spec));
    const Operator d = build_disorder(spec);
    CHECK(max_abs(d - Operator(d.diagonal().asDiagonal())) == 0.0);
    spec.disorder_bound = 0.0;
    CHECK(max_abs(build_disorder(spec)) == 0.0);
}

TEST_CASE("jump operators")
{
    const int n = 3;
    SystemSpec spec = make_preset(Geometry::chain, n, 1.0, 0.5, 1.0, 2);
    const auto plain = jumps_from_spec(spec, JumpRotation::none);
    REQUIRE(plain.size() == 1);
    CHECK(plain[0].site == 2);
    CHECK(max_abs(realize_jump(plain[0], n) - site_operator(SpinKind::minus, 2, n)) == 0.0);

    const auto local = jumps_from_spec(spec, JumpRotation::local_x_half_pi);
    const Operator rot = matrix_exp(site_operator(SpinKind::x, 2, n), Complex{0.0, -M_PI / 2});
    CHECK(max_abs(realize_jump(local[0], n) - rot * site_operator(SpinKind::minus, 2, n)) < 1e-15);

    const auto coll = jumps_from_spec(spec, JumpRotation::collective_x_half_pi);
    const Operator u = matrix_exp(total_spin(SpinKind::x, n), Complex{0.0, -M_PI / 2});
    CHECK(max_abs(collective_rotation(n) - u) < 1e-14);
    CHECK(max_abs(realize_jump(coll[0], n) - u * site_operator(SpinKind::minus, 2, n)) < 1e-14);

    // The rotation does not enter the effective Hamiltonian.
    CHECK(max_abs(build_effective_nonhermitian(spec, plain)
                  - build_effective_nonhermitian(spec, local))
          < 1e-15);
}

TEST_CASE("coalescent state points every spin along +y")
{
    for (int n = 1; n <= 5; ++n) {
        const Ket psi = coalescent_state(n);
        CHECK(psi.norm() == doctest::Approx(1.0));
        for (int s = 1; s <= n; ++s) {
            const Complex sy = psi.dot(site_operator(SpinKind::y, s, n) * psi);
            CHECK(sy.real() == doctest::Approx(0.5));
        }
    }
}

TEST_CASE("coalescent state is a right eigenvector of H_eff at the EP")
{
    // The eigenvalue is E0 - i gamma / 4, with E0 the energy of the fully
    // polarized ferromagnet.
    for (auto geometry : {Geometry::chain, Geometry::complete_graph}) {
        for (int n = 2; n <= 4; ++n) {
            const double gamma = 1.0;
            const SystemSpec spec = make_preset(geometry, n, 2.0, gamma / 2, gamma);
            const Operator h = build_effective_nonhermitian(
                spec, jumps_from_spec(spec, JumpRotation::local_x_half_pi));
            const Ket psi = coalescent_state(n);
            const Complex e0 = psi.dot(build_heisenberg(spec) * psi);
            const Complex expected = e0 - Complex{0.0, gamma / 4};
            CHECK((h * psi - expected * psi).norm() < 1e-12);
        }
    }
}

TEST_CASE("Dicke basis is orthonormal and follows the lowering chain")
{
    const int n = 4;
    const DickeBasis b = dicke_basis(n);
    REQUIRE(b.kets.size() == n + 1);
    for (std::size_t m = 0; m < b.kets.size(); ++m) {
        for (std::size_t k = 0; k < b.kets.size(); ++k) {
            CHECK(std::abs(b.kets[m].dot(b.kets[k])) == doctest::Approx(m == k ? 1.0 : 0.0));
        }
    }
    CHECK((b.kets[0] - all_up(n)).norm() < 1e-15);
    CHECK((b.kets[n] - all_down(n)).norm() < 1e-15);
    const Ket lowered = apply_total_lowering(b.kets[1], n);
    CHECK((total_spin(SpinKind::minus, n) * b.kets[1] - lowered).norm() < 1e-14);
}

TEST_CASE("W closed form for one site")
{
    const Operator w = w_matrix_closed_form(1, 0.5, 1.0);
    CHECK(std::abs(w(1, 0) - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(w(0, 1)) < 1e-15);
    CHECK(std::abs(w(0, 0)) == 0.0);
}

TEST_CASE("W is nilpotent at the exceptional point")
{
    for (int n = 1; n <= 8; ++n) {
        const Operator w = w_matrix_closed_form(n, 0.5, 1.0);
        Operator p = Operator::Identity(n + 1, n + 1);
        for (int k = 0; k <= n; ++k) {
            p = p * w;
        }
        CHECK(max_abs(p) < 1e-12);
    }
}

TEST_CASE("projected local complex field equals W up to a constant shift")
{
    for (int n = 1; n <= 5; ++n) {
        for (double lambda : {0.2, 0.5, 0.9}) {
            const double gamma = 1.0;
            const Operator projected =
                project_subspace(local_complex_field(1, n, lambda, gamma), dicke_basis(n),
                                 Frame::collective_rotation);
            const ProjectionFit fit =
                fit_projection(projected, w_matrix_closed_form(n, lambda, gamma));
            CHECK(fit.residual < 1e-12);
            CHECK(std::abs(fit.scale - Complex{1.0, 0.0}) < 1e-12);
            CHECK(std::abs(fit.shift - Complex{0.0, -gamma / 4}) < 1e-12);
        }
    }
}
