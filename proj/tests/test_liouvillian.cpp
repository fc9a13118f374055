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

#include "epspin/errors.hpp"
#include "epspin/liouvillian.hpp"
#include "epspin/observables.hpp"

using namespace epspin;

namespace {

Superoperator two_level(double lambda, double gamma, JumpRotation r = JumpRotation::none)
{
    const SystemSpec spec = make_preset(Geometry::chain, 1, 0.0, lambda, gamma);
    return build_liouvillian(spec, jumps_from_spec(spec, r));
}

SystemSpec chain3()
{
    return make_preset(Geometry::chain, 3, 1.0, 0.5, 1.0, 1);
}

Operator mixed_state(Eigen::Index d)
{
    Operator a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            a(i, j) = Complex{std::cos(0.3 * i + 1.1 * j), std::sin(0.7 * i - 0.2 * j)};
        }
    }
    const Operator p = a * a.adjoint();
    return p / p.trace();
}

} // namespace

TEST_CASE("vectorization is row-stacking")
{
    Operator m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const Eigen::VectorXcd v = vectorize(m);
    CHECK(v[1] == Complex{2.0, 0.0});
    CHECK(v[2] == Complex{3.0, 0.0});
    CHECK(max_abs(devectorize(v) - m) == 0.0);
    CHECK_THROWS(devectorize(Eigen::VectorXcd::Zero(3)));

    const Operator a = mixed_state(4);
    const Operator b = mixed_state(4) * Complex{0.0, 1.0} + Operator::Identity(4, 4);
    const Operator rho = mixed_state(4).transpose();
    const Eigen::VectorXcd lhs = vectorize(Operator(a * rho * b));
    const Eigen::VectorXcd rhs = kron(a, b.transpose()) * vectorize(rho);
    CHECK((lhs - rhs).norm() < 1e-14);
}

TEST_CASE("two-level Liouvillian matches the hand-written 4x4 matrix")
{
    for (auto [l, g] : {std::pair{0.5, 1.0}, std::pair{1.3, 0.4}, std::pair{0.0, 2.0}}) {
        const Complex il2{0.0, l / 2};
        Operator expected(4, 4);
        expected << -g, il2, -il2, 0.0, il2, -g / 2, 0.0, -il2, -il2, 0.0, -g / 2, il2, g, -il2,
            il2, 0.0;
        CHECK(max_abs(two_level(l, g).matrix() - expected) < 1e-12);
    }
}

TEST_CASE("superoperator action equals the master equation written out")
{
    const SystemSpec spec = chain3();
    for (auto r : {JumpRotation::none, JumpRotation::local_x_half_pi,
                   JumpRotation::collective_x_half_pi}) {
        const auto jumps = jumps_from_spec(spec, r);
        const Superoperator l = build_liouvillian(spec, jumps);
        const Operator h = build_hamiltonian(spec);
        const Operator rho = mixed_state(8);
        Operator expected = Complex{0.0, -1.0} * commutator(h, rho);
        for (const auto& j : jumps) {
            const Operator op = realize_jump(j, 3);
            const Operator ldl = op.adjoint() * op;
            expected += j.rate * (op * rho * op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
        }
        CHECK(max_abs(l.apply(rho) - expected) < 1e-14);
        // Trace preservation: the trace functional is a left null vector.
        CHECK(std::abs(l.apply(rho).trace()) < 1e-14);
    }
}

TEST_CASE("sparse assembly equals the dense Liouvillian")
{
    const SystemSpec spec = chain3();
    const auto jumps = jumps_from_spec(spec, JumpRotation::local_x_half_pi);
    const Operator h_eff = build_effective_nonhermitian(spec, jumps);
    const auto realized = realize_jumps(jumps, 3);
    const Operator dense = build_liouvillian(h_eff, realized).matrix();
    const Operator sparse = Operator(build_liouvillian_sparse(h_eff, realized));
    CHECK(max_abs(dense - sparse) < 1e-15);
}

TEST_CASE("two-level steady state against the closed form")
{
    const DensityMatrix at_one = two_level_ness_analytic(1.0, 1.0);
    CHECK(std::abs(at_one(0, 0) - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(at_one(0, 1) - Complex{0.0, -1.0 / 3.0}) < 1e-15);
    CHECK(std::abs(at_one(1, 0) - Complex{0.0, 1.0 / 3.0}) < 1e-15);
    CHECK(std::abs(at_one(1, 1) - 2.0 / 3.0) < 1e-15);

    // Column-stacked dense eigensolve in numpy (tests/oracles/generate.py).
    const DensityMatrix r = two_level_ness_analytic(0.3, 1.7);
    CHECK(r(0, 0).real() == doctest::Approx(0.029315960912052092).epsilon(1e-12));
    CHECK(r(0, 1).imag() == doctest::Approx(-0.16612377850162868).epsilon(1e-12));
    CHECK(r(1, 1).real() == doctest::Approx(0.97068403908794787).epsilon(1e-12));

    for (auto method : {NessMethod::spectrum, NessMethod::kernel_solve}) {
        NessOptions o;
        o.method = method;
        const NessResult n = ness(two_level(0.3, 1.7), o);
        CHECK(max_abs(n.rho.matrix() - r.matrix()) < 1e-12);
        CHECK(n.residual < 1e-13);
    }
}

TEST_CASE("three-site chain steady state against the numpy oracle")
{
    const SystemSpec spec = chain3();
    const Partition first_rest(3, {1});
    struct Expected {
        JumpRotation rotation;
        double purity;
        double correlator_re;
    };
    for (const auto& e : {Expected{JumpRotation::none, 0.84242112482852993, 1.0 / 9.0},
                          Expected{JumpRotation::local_x_half_pi, 1.0, 0.25}}) {
        const Superoperator l = build_liouvillian(spec, jumps_from_spec(spec, e.rotation));
        const NessResult n = ness(l);
        CHECK(purity(n.rho) == doctest::Approx(e.purity).epsilon(1e-10));
        CHECK(correlator(n.rho, 1, 3).real() == doctest::Approx(e.correlator_re).epsilon(1e-10));
        CHECK(std::abs(correlator(n.rho, 1, 3).imag()) < 1e-10);
        CHECK(mutual_information(n.rho, first_rest) < 1e-10);
        CHECK(n.gap > 0.0);
        CHECK(std::abs(n.eigenvalue) < 1e-10);
    }
}

TEST_CASE("the three steady-state methods agree")
{
    const SystemSpec spec = make_preset(Geometry::chain, 4, 2.0, 0.3, 1.0);
    const auto jumps = jumps_from_spec(spec, JumpRotation::none);
    const Superoperator l = build_liouvillian(spec, jumps);
    NessOptions o;
    const DensityMatrix a = ness(l, o).rho;
    o.method = NessMethod::kernel_solve;
    const DensityMatrix b = ness(l, o).rho;
    o.method = NessMethod::sparse_lu;
    const NessResult c = ness_sparse(build_effective_nonhermitian(spec, jumps),
                                     realize_jumps(jumps, 4), o);
    CHECK(max_abs(a.matrix() - b.matrix()) < 1e-10);
    CHECK(max_abs(a.matrix() - c.rho.matrix()) < 1e-10);
    CHECK(std::isnan(c.gap));
    CHECK_THROWS_AS(ness(l, o), std::invalid_argument);
}

TEST_CASE("a degenerate steady manifold is reported, not papered over")
{
    // No dissipation: every function of H is stationary.
    const SystemSpec spec = make_preset(Geometry::chain, 2, 1.0, 0.5, 0.0);
    const auto jumps = jumps_from_spec(spec, JumpRotation::none);
    const Superoperator l = build_liouvillian(spec, jumps);
    NessOptions o;
    CHECK_THROWS_AS(ness(l, o), InvariantViolation);
    o.method = NessMethod::kernel_solve;
    CHECK_THROWS_AS(ness(l, o), InvariantViolation);
    CHECK_THROWS_AS(ness_sparse(build_effective_nonhermitian(spec, jumps),
                                realize_jumps(jumps, 2), o),
                    InvariantViolation);
}

TEST_CASE("the coalescent state is annihilated at the EP with the rotated jump")
{
    for (auto geometry : {Geometry::chain, Geometry::complete_graph}) {
        for (int n = 2; n <= 4; ++n) {
            const SystemSpec spec = make_preset(geometry, n, 2.0, 0.5, 1.0);
            const Superoperator l =
                build_liouvillian(spec, jumps_from_spec(spec, JumpRotation::local_x_half_pi));
            const Eigen::VectorXcd v = vectorize(DensityMatrix::from_ket(coalescent_state(n)));
            CHECK((l.matrix() * v).norm() < 1e-12);
        }
    }
}

TEST_CASE("Liouvillian spectrum is contractive with a zero mode")
{
    const Spectrum s = liouvillian_spectrum(two_level(1.0, 1.0));
    CHECK(s.values.size() == 4);
    CHECK(std::abs(s.values[0]) < 1e-12);
    CHECK(s.max_real_part < 1e-12);
    // The eigenvalues sum to the trace, -2 gamma.
    double sum = 0.0;
    for (Eigen::Index k = 0; k < 4; ++k) {
        sum += s.values[k].real();
    }
    CHECK(sum == doctest::Approx(-2.0));
    CHECK(s.gap > 0.0);
}
