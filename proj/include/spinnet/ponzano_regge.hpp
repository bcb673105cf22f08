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

///
/// \file spinnet/ponzano_regge.hpp
///
/// \brief Semiclassical (large spin) estimate of the 6j symbol.
///
/// {a b c; d e f} is read as a tetrahedron with edge lengths j + 1/2. Edge
/// i and edge i+3 are opposite; each row-column triad of the symbol is a
/// face. With vertices A, B, C, D the edges are a=AB, b=BC, c=CA, d=CD,
/// e=DA, f=BD. In the classically allowed region
///
///   {6j} ~ cos(sum_i L_i theta_i + pi/4) / sqrt(12 pi V)
///
/// where theta_i is the exterior dihedral angle at edge i and V the volume.
/// The exponentially small tail outside that region is not modelled: the
/// estimate is reported as 0 together with the regime flag.
///

#ifndef SPINNET_PONZANO_REGGE_HPP
#define SPINNET_PONZANO_REGGE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string_view>

#include "exact.hpp"
#include "half_int.hpp"
#include "wigner.hpp"

namespace spinnet {

enum class Regime { allowed, forbidden, degenerate };

inline std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::allowed:
        return "allowed";
    case Regime::forbidden:
        return "forbidden";
    case Regime::degenerate:
        return "degenerate";
    }
    return "?";
}

struct PonzanoReggeEstimate {
    double approx = 0.0;
    Regime regime = Regime::degenerate;
    double volume = 0.0;
};

///
/// 288 V^2 as the Cayley-Menger determinant, evaluated exactly. Squared
/// lengths are given in 6j edge order (AB, BC, CA, CD, DA, BD).
///
inline Rational cayley_menger(const std::array<Rational, 6>& sq) {
    // vertex pairs for the six edges
    constexpr std::array<std::array<int, 2>, 6> ends{{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}, {1, 3}}};
    std::array<std::array<Rational, 5>, 5> m;
    for (auto& row : m)
        row.fill(Rational(0));
    for (int i = 1; i < 5; ++i)
        m[0][i] = m[i][0] = 1;
    for (int e = 0; e < 6; ++e) {
        const int u = ends[e][0] + 1, v = ends[e][1] + 1;
        m[u][v] = m[v][u] = sq[e];
    }
    Rational det(1);
    for (int col = 0; col < 5; ++col) {
        int pivot = col;
        while (pivot < 5 && m[pivot][col] == 0)
            ++pivot;
        if (pivot == 5)
            return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 5; ++r) {
            if (m[r][col] == 0)
                continue;
            const Rational factor = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c)
                m[r][c] -= factor * m[col][c];
        }
    }
    return det;
}

inline Regime classify_tetrahedron(const std::array<Rational, 6>& squared_lengths) {
    const int s = sgn(cayley_menger(squared_lengths));
    return s > 0 ? Regime::allowed : (s < 0 ? Regime::forbidden : Regime::degenerate);
}

namespace detail {

using Vec3 = std::array<long double, 3>;

inline Vec3 sub(const Vec3& x, const Vec3& y) { return {x[0] - y[0], x[1] - y[1], x[2] - y[2]}; }
inline long double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

/// Exterior dihedral angles at the six edges of a nondegenerate tetrahedron.
inline std::array<long double, 6> exterior_dihedral_angles(const std::array<long double, 6>& len) {
    const long double ab = len[0], bc = len[1], ca = len[2], cd = len[3], da = len[4], bd = len[5];
    std::array<Vec3, 4> p{};
    p[1] = {ab, 0, 0};
    const long double cx = (ca * ca - bc * bc + ab * ab) / (2 * ab);
    const long double cy = std::sqrt(std::max(ca * ca - cx * cx, 0.0L));
    p[2] = {cx, cy, 0};
    const long double dx = (da * da - bd * bd + ab * ab) / (2 * ab);
    const long double dy = (da * da - cd * cd + cx * cx + cy * cy - 2 * cx * dx) / (2 * cy);
    const long double dz = std::sqrt(std::max(da * da - dx * dx - dy * dy, 0.0L));
    p[3] = {dx, dy, dz};

    constexpr std::array<std::array<int, 4>, 6> edges{
        {{0, 1, 2, 3}, {1, 2, 0, 3}, {2, 0, 1, 3}, {2, 3, 0, 1}, {3, 0, 1, 2}, {1, 3, 0, 2}}};
    std::array<long double, 6> theta{};
    for (int e = 0; e < 6; ++e) {
        const auto& [u, v, w1, w2] = edges[e];
        Vec3 axis = sub(p[v], p[u]);
        const long double n = std::sqrt(dot(axis, axis));
        for (auto& x : axis)
            x /= n;
        Vec3 x1 = sub(p[w1], p[u]);
        Vec3 x2 = sub(p[w2], p[u]);
        const long double k1 = dot(x1, axis), k2 = dot(x2, axis);
        for (int i = 0; i < 3; ++i) {
            x1[i] -= k1 * axis[i];
            x2[i] -= k2 * axis[i];
        }
        long double cosv = dot(x1, x2) / std::sqrt(dot(x1, x1) * dot(x2, x2));
        cosv = std::clamp(cosv, -1.0L, 1.0L);
        theta[e] = std::numbers::pi_v<long double> - std::acos(cosv);
    }
    return theta;
}

} // namespace detail

///
/// Ponzano-Regge estimate of {a b c; d e f}. All four triads must be
/// admissible (DomainError otherwise).
///
inline PonzanoReggeEstimate sixj_ponzano_regge(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    if (!sixj_admissible(a, b, c, d, e, f))
        throw DomainError("sixj_ponzano_regge: inadmissible triad in {" + a.str() + " " + b.str() + " " + c.str() +
                          "; " + d.str() + " " + e.str() + " " + f.str() + "}");
    const std::array<HalfInt, 6> spins{a, b, c, d, e, f};
    std::array<Rational, 6> sq;
    std::array<long double, 6> len{};
    for (int i = 0; i < 6; ++i) {
        Rational l(spins[i].twice() + 1, 2);
        l.canonicalize();
        sq[i] = l * l;
        len[i] = (spins[i].twice() + 1) / 2.0L;
    }
    const Rational v288 = cayley_menger(sq);
    PonzanoReggeEstimate out;
    const int s = sgn(v288);
    if (s == 0) {
        out.regime = Regime::degenerate;
        return out;
    }
    if (s < 0) {
        out.regime = Regime::forbidden;
        return out;
    }
    const long double volume = std::sqrt(static_cast<long double>(v288.get_d()) / 288.0L);
    const auto theta = detail::exterior_dihedral_angles(len);
    long double phase = std::numbers::pi_v<long double> / 4;
    for (int i = 0; i < 6; ++i)
        phase += len[i] * theta[i];
    out.regime = Regime::allowed;
    out.volume = static_cast<double>(volume);
    out.approx = static_cast<double>(std::cos(phase) / std::sqrt(12 * std::numbers::pi_v<long double> * volume));
    return out;
}

} // namespace spinnet

#endif // SPINNET_PONZANO_REGGE_HPP
