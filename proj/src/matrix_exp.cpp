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

// Scaling and squaring with Pade approximants of degree 3, 5, 7, 9 or 13,
// following N. J. Higham, SIAM J. Matrix Anal. Appl. 26(4), 2005.

#include <array>
#include <cmath>
#include <stdexcept>

#include "epspin/spin_core.hpp"

namespace epspin {

namespace {

constexpr std::array<double, 4> kB3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kB5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kB7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                    25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kB9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                     30270240.0,    2162160.0,    110880.0,     3960.0,
                                     90.0,          1.0};
constexpr std::array<double, 14> kB13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Backward-error thresholds on the 1-norm for each degree.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const Operator& a)
{
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Low-degree approximant r_m = q^{-1} p with p = U + V, q = -U + V.
template <std::size_t M>
Operator pade_low(const Operator& a, const std::array<double, M>& b)
{
    const Eigen::Index n = a.rows();
    const Operator id = Operator::Identity(n, n);
    const Operator a2 = a * a;
    Operator even = b[0] * id;
    Operator odd = b[1] * id;
    Operator power = id;
    for (std::size_t k = 2; k < M; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < M) {
            odd += b[k + 1] * power;
        }
    }
    const Operator u = a * odd;
    return (-u + even).partialPivLu().solve(u + even);
}

Operator pade13(const Operator& a)
{
    const auto& b = kB13;
    const Eigen::Index n = a.rows();
    const Operator id = Operator::Identity(n, n);
    const Operator a2 = a * a;
    const Operator a4 = a2 * a2;
    const Operator a6 = a4 * a2;
    const Operator u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2
             + b[1] * id);
    const Operator v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return (-u + v).partialPivLu().solve(u + v);
}

} // namespace

Operator matrix_exp(const Operator& a, Complex scale)
{
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("matrix_exp: matrix is not square");
    }
    if (a.rows() > kMaxDimension) {
        throw std::length_error("matrix_exp: dimension exceeds cap");
    }
    const Operator x = scale * a;
    if (!x.allFinite()) {
        throw std::domain_error("matrix_exp: non-finite entries");
    }
    if (x.rows() == 0) {
        return x;
    }

    const double norm = one_norm(x);
    if (norm <= kTheta3) {
        return pade_low(x, kB3);
    }
    if (norm <= kTheta5) {
        return pade_low(x, kB5);
    }
    if (norm <= kTheta7) {
        return pade_low(x, kB7);
    }
    if (norm <= kTheta9) {
        return pade_low(x, kB9);
    }

    int squarings = 0;
    if (norm > kTheta13) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    }
    Operator r = pade13(x / std::ldexp(1.0, squarings));
    for (int k = 0; k < squarings; ++k) {
        r = r * r;
    }
    return r;
}

} // namespace epspin
