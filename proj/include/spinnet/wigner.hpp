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
/// \file spinnet/wigner.hpp
///
/// \brief Clebsch-Gordan coefficients, 6j symbols and rotation matrices.
///
/// Conventions: Condon-Shortley phases; z-y-z Euler angles with active
/// rotations, D^j_{m m'}(a,b,g) = exp(-i m a) d^j_{m m'}(b) exp(-i m' g).
/// Matrices indexed by magnetic number use ascending order, row/column i
/// corresponding to m = -j + i.
///

#ifndef SPINNET_WIGNER_HPP
#define SPINNET_WIGNER_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "exact.hpp"
#include "half_int.hpp"
#include "memo.hpp"

namespace spinnet {

namespace detail {
inline long ival(HalfInt x) { return x.as_int(); }
} // namespace detail

///
/// <j1 m1; j2 m2 | J M>.
///
/// Zero when M != m1 + m2 or (j1, j2, J) is not a triad. Throws DomainError
/// when some m is out of range or has the wrong parity for its j.
///
inline ExactReal cgc(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    require_projection(j1, m1, "cgc");
    require_projection(j2, m2, "cgc");
    require_projection(J, M, "cgc");
    if (M != m1 + m2 || !admissible(j1, j2, J))
        return {};

    using detail::ival;
    const long a = ival(j1 + j2 - J), b = ival(j1 - j2 + J), c = ival(-j1 + j2 + J);
    const long d = ival(j1 + j2 + J) + 1;
    const long f = ival(j1 - m1), g = ival(j2 + m2);

    Radicand rad;
    rad.integer(J.multiplicity());
    rad.factorial(a).factorial(b).factorial(c).factorial(d, -1);
    rad.factorial(ival(j1 + m1)).factorial(f).factorial(g).factorial(ival(j2 - m2));
    rad.factorial(ival(J + M)).factorial(ival(J - M));

    const long s1 = ival(J - j2 + m1), s2 = ival(J - j1 - m2);
    const long kmin = std::max({0L, -s1, -s2});
    const long kmax = std::min({a, f, g});
    Rational sum(0);
    for (long k = kmin; k <= kmax; ++k) {
        Integer den = factorial(int(k)) * factorial(int(a - k)) * factorial(int(f - k)) *
                      factorial(int(g - k)) * factorial(int(s1 + k)) * factorial(int(s2 + k));
        Rational term(Integer(k % 2 == 0 ? 1 : -1), den);
        term.canonicalize();
        sum += term;
    }
    return ExactReal::from_radicand(sum, rad);
}

/// All 24 classical symmetries of {a b c; d e f}: column permutations and
/// upper/lower exchange in any two columns.
inline std::vector<std::array<HalfInt, 6>> sixj_symmetries(const std::array<HalfInt, 6>& s) {
    std::array<std::array<HalfInt, 2>, 3> cols{{{s[0], s[3]}, {s[1], s[4]}, {s[2], s[5]}}};
    std::array<int, 3> perm{0, 1, 2};
    std::vector<std::array<HalfInt, 6>> out;
    out.reserve(24);
    do {
        for (int flip = 0; flip < 4; ++flip) {
            // flip selects which pair of columns is swapped top/bottom: none, (0,1), (0,2), (1,2)
            std::array<bool, 3> sw{false, false, false};
            if (flip == 1)
                sw = {true, true, false};
            else if (flip == 2)
                sw = {true, false, true};
            else if (flip == 3)
                sw = {false, true, true};
            std::array<HalfInt, 6> v;
            for (int c = 0; c < 3; ++c) {
                const auto& col = cols[perm[c]];
                v[c] = sw[c] ? col[1] : col[0];
                v[c + 3] = sw[c] ? col[0] : col[1];
            }
            out.push_back(v);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// True when all four triads (abc), (aef), (dbf), (dec) are admissible.
inline bool sixj_admissible(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    return admissible(a, b, c) && admissible(a, e, f) && admissible(d, b, f) && admissible(d, e, c);
}

namespace detail {

inline ExactReal sixj_racah(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    Radicand rad;
    auto delta = [&rad](HalfInt x, HalfInt y, HalfInt z) {
        rad.factorial(ival(x + y - z)).factorial(ival(x - y + z)).factorial(ival(-x + y + z));
        rad.factorial(ival(x + y + z) + 1, -1);
    };
    delta(a, b, c);
    delta(a, e, f);
    delta(d, b, f);
    delta(d, e, c);

    const long t1 = ival(a + b + c), t2 = ival(a + e + f), t3 = ival(d + b + f), t4 = ival(d + e + c);
    const long u1 = ival(a + b + d + e), u2 = ival(a + c + d + f), u3 = ival(b + c + e + f);
    const long tmin = std::max({t1, t2, t3, t4});
    const long tmax = std::min({u1, u2, u3});
    Rational sum(0);
    for (long t = tmin; t <= tmax; ++t) {
        Integer den = factorial(int(t - t1)) * factorial(int(t - t2)) * factorial(int(t - t3)) *
                      factorial(int(t - t4)) * factorial(int(u1 - t)) * factorial(int(u2 - t)) *
                      factorial(int(u3 - t));
        Rational term(factorial(int(t + 1)), den);
        term.canonicalize();
        if (t % 2)
            term = -term;
        sum += term;
    }
    return ExactReal::from_radicand(sum, rad);
}

inline ConcurrentMemo<std::array<int, 6>, ExactReal, ArrayHash>& sixj_cache() {
    static ConcurrentMemo<std::array<int, 6>, ExactReal, ArrayHash> cache;
    return cache;
}

} // namespace detail

///
/// Wigner 6j symbol {a b c; d e f} by the single-sum Racah formula.
/// Exact zero when any triad is inadmissible. Results are memoized under the
/// canonical representative of the 24 symmetries.
///
inline ExactReal sixj(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    if (!sixj_admissible(a, b, c, d, e, f))
        return {};
    std::array<int, 6> key{};
    bool first = true;
    for (const auto& v : sixj_symmetries({a, b, c, d, e, f})) {
        std::array<int, 6> k{};
        for (int i = 0; i < 6; ++i)
            k[i] = v[i].twice();
        if (first || k < key)
            key = k;
        first = false;
    }
    return detail::sixj_cache().get_or_compute(key, [&] {
        auto h = [&](int i) { return HalfInt::from_twice(key[i]); };
        return detail::sixj_racah(h(0), h(1), h(2), h(3), h(4), h(5));
    });
}

///
/// Euler angles (z-y-z). Construction brings beta into [0, pi] and reduces
/// alpha and gamma into [0, 2 pi), so one value names one SO(3) rotation.
/// For half-integer j the sign of D^j is fixed by this representative.
///
class EulerAngles {
  public:
    EulerAngles() = default;
    EulerAngles(double alpha, double beta, double gamma) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        beta = std::fmod(beta, two_pi);
        if (beta < 0)
            beta += two_pi;
        if (beta > std::numbers::pi) {
            beta = two_pi - beta;
            alpha += std::numbers::pi;
            gamma += std::numbers::pi;
        }
        alpha_ = reduce(alpha);
        beta_ = beta;
        gamma_ = reduce(gamma);
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

  private:
    static double reduce(double x) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        x = std::fmod(x, two_pi);
        if (x < 0)
            x += two_pi;
        if (x >= two_pi)
            x = 0.0;
        return x;
    }

    double alpha_ = 0.0, beta_ = 0.0, gamma_ = 0.0;
};

namespace detail {
inline long double factorial_ld(long n) {
    static const std::vector<long double> table = [] {
        std::vector<long double> t(1755);
        t[0] = 1.0L;
        for (std::size_t i = 1; i < t.size(); ++i)
            t[i] = t[i - 1] * static_cast<long double>(i);
        return t;
    }();
    if (n < 0 || n >= static_cast<long>(table.size()))
        throw DomainError("factorial argument out of floating range");
    return table[static_cast<std::size_t>(n)];
}
} // namespace detail

/// Wigner small-d element d^j_{m mp}(beta).
inline double wigner_small_d(HalfInt j, HalfInt m, HalfInt mp, double beta) {
    require_projection(j, m, "wigner_small_d");
    require_projection(j, mp, "wigner_small_d");
    using detail::factorial_ld;
    using detail::ival;
    const long jpm = ival(j + m), jmm = ival(j - m), jpp = ival(j + mp), jmp = ival(j - mp);
    const long dm = ival(m - mp);
    const long double c = std::cos(static_cast<long double>(beta) / 2);
    const long double s = std::sin(static_cast<long double>(beta) / 2);
    const long double pref =
        std::sqrt(factorial_ld(jpm) * factorial_ld(jmm) * factorial_ld(jpp) * factorial_ld(jmp));
    const long kmin = std::max(0L, -dm);
    const long kmax = std::min(jpp, jmm);
    long double sum = 0.0L;
    for (long k = kmin; k <= kmax; ++k) {
        const long double den =
            factorial_ld(jpp - k) * factorial_ld(k) * factorial_ld(dm + k) * factorial_ld(jmm - k);
        const long pc = ival(j + j) + ival(mp - m) - 2 * k;
        const long ps = dm + 2 * k;
        long double term = std::pow(c, static_cast<long double>(pc)) * std::pow(s, static_cast<long double>(ps)) / den;
        sum += ((dm + k) % 2 == 0) ? term : -term;
    }
    return static_cast<double>(pref * sum);
}

inline std::complex<double> wigner_D(HalfInt j, HalfInt m, HalfInt mp, const EulerAngles& angles) {
    const double d = wigner_small_d(j, m, mp, angles.beta());
    const double phase = -(m.value() * angles.alpha() + mp.value() * angles.gamma());
    return std::polar(d, phase);
}

/// Full (2j+1)x(2j+1) d^j(beta), ascending m.
inline Eigen::MatrixXd wigner_small_d_matrix(HalfInt j, double beta) {
    const int dim = j.multiplicity();
    Eigen::MatrixXd out(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            out(r, c) = wigner_small_d(j, HalfInt::from_twice(2 * r - j.twice()),
                                       HalfInt::from_twice(2 * c - j.twice()), beta);
    return out;
}

/// Full D^j(alpha, beta, gamma), ascending m.
inline Eigen::MatrixXcd wigner_D_matrix(HalfInt j, const EulerAngles& angles) {
    const int dim = j.multiplicity();
    Eigen::MatrixXcd out(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            out(r, c) = wigner_D(j, HalfInt::from_twice(2 * r - j.twice()),
                                 HalfInt::from_twice(2 * c - j.twice()), angles);
    return out;
}

} // namespace spinnet

#endif // SPINNET_WIGNER_HPP
