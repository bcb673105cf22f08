// Copyright 2026 The spinnet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test oracles for rotations:
//  - small d by exponentiating -i beta J_y built from ladder operators,
//  - z-y-z composition through 3x3 rotation matrices with Euler angles
//    re-extracted, and the SU(2) sign that SO(3) cannot see.
// Index i of every matrix corresponds to m = -j + i.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

namespace oracle {

/// exp(-i beta J_y) for spin jt/2, ascending m.
inline Eigen::MatrixXd small_d_by_exponential(int jt, double beta) {
    const int dim = jt + 1;
    Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i + 1 < dim; ++i) {
        const int mt = -jt + 2 * i; // J+ |m> = sqrt((j-m)(j+m+1)) |m+1>
        const double up = std::sqrt(0.25 * (jt - mt) * (jt + mt + 2));
        // J_y = (J+ - J-) / 2i
        jy(i + 1, i) += up / std::complex<double>(0, 2);
        jy(i, i + 1) -= up / std::complex<double>(0, 2);
    }
    const Eigen::MatrixXcd gen = std::complex<double>(0, -beta) * jy;
    const Eigen::MatrixXcd d = gen.exp();
    return d.real();
}

inline Eigen::Matrix3d rz(double a) {
    Eigen::Matrix3d r;
    r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    return r;
}

inline Eigen::Matrix3d ry(double b) {
    Eigen::Matrix3d r;
    r << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
    return r;
}

inline Eigen::Matrix3d so3(double a, double b, double g) { return rz(a) * ry(b) * rz(g); }

struct Euler {
    double alpha, beta, gamma;
};

/// z-y-z angles of a proper rotation, beta in [0, pi].
inline Euler extract_zyz(const Eigen::Matrix3d& r) {
    const double beta = std::atan2(std::hypot(r(0, 2), r(1, 2)), r(2, 2));
    if (std::sin(beta) < 1e-9) // gimbal lock; put everything into alpha
        return {std::atan2(r(1, 0), r(0, 0)), beta, 0.0};
    return {std::atan2(r(1, 2), r(0, 2)), beta, std::atan2(r(2, 1), -r(2, 0))};
}

/// e^{-i a sz/2} e^{-i b sy/2} e^{-i g sz/2}, rows and columns ascending m.
inline Eigen::Matrix2cd su2(double a, double b, double g) {
    using C = std::complex<double>;
    Eigen::Matrix2cd za, yb, zg;
    za << std::exp(C(0, a / 2)), 0, 0, std::exp(C(0, -a / 2)); // m = -1/2 first
    zg << std::exp(C(0, g / 2)), 0, 0, std::exp(C(0, -g / 2));
    // ascending basis: d(m=-1/2, m'=+1/2) = +sin(b/2)
    yb << std::cos(b / 2), std::sin(b / 2), -std::sin(b / 2), std::cos(b / 2);
    return za * yb * zg;
}

/// +1 or -1 with su2(x) * su2(y) = sign * su2(z).
inline int su2_sign(const Eigen::Matrix2cd& xy, const Eigen::Matrix2cd& z) {
    return (xy - z).norm() < (xy + z).norm() ? 1 : -1;
}

} // namespace oracle
