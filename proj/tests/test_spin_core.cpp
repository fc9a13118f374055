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

#include <array>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "epspin/spin_core.hpp"

using namespace epspin;

namespace {

Operator pauli_half(SpinKind k)
{
    Operator m = Operator::Zero(2, 2);
    switch (k) {
    case SpinKind::x:
        m << 0.0, 0.5, 0.5, 0.0;
        break;
    case SpinKind::y:
        m << 0.0, Complex{0.0, -0.5}, Complex{0.0, 0.5}, 0.0;
        break;
    case SpinKind::z:
        m << 0.5, 0.0, 0.0, -0.5;
        break;
    case SpinKind::plus:
        m << 0.0, 1.0, 0.0, 0.0;
        break;
    case SpinKind::minus:
        m << 0.0, 0.0, 1.0, 0.0;
        break;
    }
    return m;
}

Operator deterministic_matrix(Eigen::Index n, double scale)
{
    Operator a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = scale * Complex{std::sin(1.0 + 3.0 * i + j), std::cos(2.0 * i - j)};
        }
    }
    return a;
}

} // namespace

TEST_CASE("single-site matrices match the basis convention")
{
    for (auto k : {SpinKind::x, SpinKind::y, SpinKind::z, SpinKind::plus, SpinKind::minus}) {
        CHECK(max_abs(single_site(k) - pauli_half(k)) == 0.0);
    }
    // s+ s- projects on |up>, which is basis index 0.
    const Operator n_up = single_site(SpinKind::plus) * single_site(SpinKind::minus);
    CHECK(n_up(0, 0) == Complex{1.0, 0.0});
    CHECK(n_up(1, 1) == Complex{0.0, 0.0});
}

TEST_CASE("site 1 is the most significant bit")
{
    const Operator z1 = site_operator(SpinKind::z, 1, 3);
    const Operator z3 = site_operator(SpinKind::z, 3, 3);
    // Index 1 = |up up down>, index 4 = |down up up>.
    CHECK(z1(1, 1).real() == doctest::Approx(0.5));
    CHECK(z3(1, 1).real() == doctest::Approx(-0.5));
    CHECK(z1(4, 4).real() == doctest::Approx(-0.5));
    CHECK(max_abs(all_up(3) - basis_ket(3, 0)) == 0.0);
    CHECK(max_abs(all_down(3) - basis_ket(3, 7)) == 0.0);
}

TEST_CASE("spin algebra holds on every site")
{
    const int n = 3;
    for (int s = 1; s <= n; ++s) {
        const Operator x = site_operator(SpinKind::x, s, n);
        const Operator y = site_operator(SpinKind::y, s, n);
        const Operator z = site_operator(SpinKind::z, s, n);
        CHECK(max_abs(commutator(x, y) - kI * z) < 1e-15);
        CHECK(max_abs(site_operator(SpinKind::plus, s, n) - (x + kI * y)) < 1e-15);
    }
    // Operators on different sites commute.
    CHECK(max_abs(commutator(site_operator(SpinKind::plus, 1, n),
                             site_operator(SpinKind::minus, 2, n)))
          == 0.0);
}

TEST_CASE("kron and identity")
{
    const Operator a = deterministic_matrix(2, 1.0);
    const Operator b = deterministic_matrix(3, 0.5);
    const Operator k = kron(a, b);
    CHECK(k.rows() == 6);
    CHECK(std::abs(k(4, 2) - a(1, 0) * b(1, 2)) < 1e-15);
    CHECK(max_abs(kron(identity(2), identity(4)) - identity(8)) == 0.0);
}

TEST_CASE("matrix exponential agrees with Eigen's MatrixFunctions module")
{
    for (Eigen::Index n : {1, 2, 5, 16, 64}) {
        for (double scale : {1e-3, 0.7, 6.0, 40.0}) {
            const Operator a = deterministic_matrix(n, scale / static_cast<double>(n));
            const Operator expected = a.exp();
            const double tol = 1e-12 * std::max(1.0, max_abs(expected));
            CHECK(max_abs(matrix_exp(a) - expected) < tol);
        }
    }
}

TEST_CASE("matrix exponential of a generator with a scale factor")
{
    const Operator h = site_operator(SpinKind::x, 1, 1);
    const double t = 0.9;
    // exp(-i t s^x) = cos(t/2) I - i sin(t/2) sigma^x
    Operator expected(2, 2);
    expected << std::cos(t / 2), Complex{0.0, -std::sin(t / 2)}, Complex{0.0, -std::sin(t / 2)},
        std::cos(t / 2);
    CHECK(max_abs(matrix_exp(h, Complex{0.0, -t}) - expected) < 1e-15);
}

TEST_CASE("partial trace of a product state")
{
    Operator a(2, 2);
    a << 0.7, Complex{0.2, -0.1}, Complex{0.2, 0.1}, 0.3;
    Operator b(2, 2);
    b << 0.4, Complex{0.0, -0.25}, Complex{0.0, 0.25}, 0.6;
    const Operator ab = kron(a, b);
    const std::array<int, 1> first{1};
    const std::array<int, 1> second{2};
    CHECK(max_abs(partial_trace(ab, first) - a) < 1e-15);
    CHECK(max_abs(partial_trace(ab, second) - b) < 1e-15);
    const Operator big = kron(kron(a, b), a);
    const std::array<int, 2> outer{1, 3};
    CHECK(max_abs(partial_trace(big, outer) - kron(a, a)) < 1e-15);
}

TEST_CASE("hermitian eigendecomposition rejects non-Hermitian input")
{
    Operator a = deterministic_matrix(4, 1.0);
    CHECK_THROWS(herm_eig(a));
    const Operator h = a + a.adjoint();
    const HermitianEigen e = herm_eig(h);
    CHECK(max_abs(hermitian_function(e, [](double x) { return x; }) - h) < 1e-13);
}

TEST_CASE("eigenvalues of a triangular matrix are its diagonal")
{
    Operator a = Operator::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = Complex{0.0, 2.0};
    a(2, 2) = -3.0;
    a(2, 0) = 5.0;
    Eigen::VectorXcd v = eigenvalues(a);
    double sum_abs = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        sum_abs += std::abs(v[k]);
    }
    CHECK(sum_abs == doctest::Approx(6.0));
    CHECK(std::abs(v.sum() - a.trace()) < 1e-14);
}

TEST_CASE("size limits")
{
    CHECK_THROWS(site_operator(SpinKind::z, 0, 2));
    CHECK_THROWS(site_operator(SpinKind::z, 3, 2));
    CHECK_THROWS(all_up(kMaxSites + 1));
    CHECK(sites_for_dimension(16) == 4);
    CHECK_THROWS(sites_for_dimension(12));
}
