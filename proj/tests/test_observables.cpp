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
#include "epspin/model.hpp"
#include "epspin/observables.hpp"

using namespace epspin;

namespace {

DensityMatrix qubit(double a, Complex b, double d)
{
    Operator m(2, 2);
    m << a, b, std::conj(b), d;
    return DensityMatrix::from_matrix(m);
}

Ket bell()
{
    Ket psi = Ket::Zero(4);
    psi[0] = 1.0 / std::sqrt(2.0);
    psi[3] = 1.0 / std::sqrt(2.0);
    return psi;
}

} // namespace

TEST_CASE("purity")
{
    CHECK(purity(DensityMatrix::from_ket(all_up(3))) == doctest::Approx(1.0));
    CHECK(purity(DensityMatrix::maximally_mixed(8)) == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("fidelity of pure states is the squared overlap")
{
    Ket a(2);
    a << 1.0, 0.0;
    Ket b(2);
    b << std::cos(0.4), Complex{0.0, std::sin(0.4)};
    const auto ra = DensityMatrix::from_ket(a);
    const auto rb = DensityMatrix::from_ket(b);
    const double overlap = std::norm(a.dot(b));
    CHECK(uhlmann_fidelity(ra, rb) == doctest::Approx(overlap).epsilon(1e-12));
    CHECK(uhlmann_fidelity_root(ra, rb) == doctest::Approx(std::sqrt(overlap)).epsilon(1e-12));
    CHECK(fidelity_with_pure(rb, a) == doctest::Approx(overlap).epsilon(1e-12));
    CHECK(uhlmann_fidelity(ra, ra) == doctest::Approx(1.0));
}

TEST_CASE("fidelity of commuting states is the classical overlap")
{
    const auto p = qubit(0.8, 0.0, 0.2);
    const auto q = qubit(0.3, 0.0, 0.7);
    const double root = std::sqrt(0.8 * 0.3) + std::sqrt(0.2 * 0.7);
    CHECK(uhlmann_fidelity_root(p, q) == doctest::Approx(root).epsilon(1e-13));
}

TEST_CASE("fidelity of two mixed qubit states against the numpy oracle")
{
    const auto a = qubit(0.7, Complex{0.2, -0.1}, 0.3);
    const auto b = qubit(0.4, Complex{0.0, -0.25}, 0.6);
    CHECK(uhlmann_fidelity(a, b) == doctest::Approx(0.84704599092705446).epsilon(1e-12));
    CHECK(uhlmann_fidelity(b, a) == doctest::Approx(0.84704599092705446).epsilon(1e-12));
    CHECK(von_neumann_entropy(a) == doctest::Approx(0.50040242353818787).epsilon(1e-12));
}

TEST_CASE("fidelity stays at one for identical rank-deficient states")
{
    const int n = 4;
    const auto c = DensityMatrix::from_ket(coalescent_state(n));
    CHECK(uhlmann_fidelity(c, c) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(uhlmann_fidelity_root(c, c) <= 1.0);
}

TEST_CASE("entropy and mutual information")
{
    CHECK(von_neumann_entropy(DensityMatrix::from_ket(all_down(2))) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4))
          == doctest::Approx(2.0 * std::log(2.0)));
    const auto b = DensityMatrix::from_ket(bell());
    CHECK(mutual_information(b, Partition(2, {1})) == doctest::Approx(2.0 * std::log(2.0)));
    const auto product = DensityMatrix::from_ket(coalescent_state(3));
    CHECK(mutual_information(product, Partition(3, {2})) < 1e-12);
}

TEST_CASE("partitions")
{
    const Partition p(4, {3, 1});
    CHECK(p.part_b() == std::vector<int>{2, 4});
    CHECK_THROWS(Partition(3, {}));
    CHECK_THROWS(Partition(3, {1, 2, 3}));
    CHECK_THROWS(Partition(3, {4}));
    CHECK_THROWS(Partition(3, {1, 1}));
}

TEST_CASE("correlator and magnetization of the coalescent state")
{
    const int n = 4;
    const auto c = DensityMatrix::from_ket(coalescent_state(n));
    // Every spin along +y: <s+_i s-_j> = <s+><s-> = (i/2)(-i/2) = 1/4.
    const Complex corr = correlator(c, 1, n);
    CHECK(corr.real() == doctest::Approx(0.25));
    CHECK(std::abs(corr.imag()) < 1e-14);
    for (double y : magnetization(c, Axis::y)) {
        CHECK(y == doctest::Approx(0.5));
    }
    for (double x : magnetization(c, Axis::x)) {
        CHECK(std::abs(x) < 1e-14);
    }
    CHECK(correlator(c, 2, 2).real() == doctest::Approx(0.5));
}

TEST_CASE("trace distance")
{
    const auto up = DensityMatrix::from_ket(all_up(1));
    const auto down = DensityMatrix::from_ket(all_down(1));
    CHECK(trace_distance(up, down) == doctest::Approx(1.0));
    CHECK(trace_distance(up, up) == doctest::Approx(0.0));
    CHECK(trace_distance(up, DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
}

TEST_CASE("density matrix validation")
{
    Operator m(2, 2);
    m << 1.2, 0.0, 0.0, -0.2;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvariantViolation);
    m << 0.5, 0.0, 0.0, 0.4;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvariantViolation);
    m << 0.5, 0.1, 0.2, 0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvariantViolation);
    m << 1.0 + 1e-9, 0.0, 0.0, -1e-9;
    CHECK(DensityMatrix::sanitized(m)(1, 1) == Complex{0.0, 0.0});
}
