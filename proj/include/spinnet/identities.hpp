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

#ifndef SPINNET_IDENTITIES_HPP
#define SPINNET_IDENTITIES_HPP

#include <cmath>

#include "exact.hpp"
#include "half_int.hpp"
#include "wigner.hpp"

namespace spinnet {

/// LHS - RHS of an identity, exactly and through double arithmetic.
struct IdentityResidual {
    SurdSum exact;
    double numeric = 0.0; // |LHS - RHS| with every 6j rounded to double first

    bool exact_zero() const { return exact.is_zero(); }
};

///
/// Biedenharn-Elliott identity
///
///   sum_x (-1)^(S+x) (2x+1) {a b x; c d p} {c d x; e f q} {e f x; b a r}
///     = {p q r; e a d} {p q r; f b c},     S = a+b+c+d+e+f+p+q+r.
///
inline IdentityResidual check_pentagon(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f, HalfInt p,
                                       HalfInt q, HalfInt r) {
    const HalfInt s = a + b + c + d + e + f + p + q + r;
    SurdSum lhs;
    double lhs_f = 0.0;
    // x must close (a b x); parity follows from a + b.
    for (int tx = std::abs(a.twice() - b.twice()); tx <= a.twice() + b.twice(); tx += 2) {
        const HalfInt x = HalfInt::from_twice(tx);
        const ExactReal s1 = sixj(a, b, x, c, d, p);
        if (s1.is_zero())
            continue;
        const ExactReal s2 = sixj(c, d, x, e, f, q);
        const ExactReal s3 = sixj(e, f, x, b, a, r);
        if (s2.is_zero() || s3.is_zero())
            continue;
        const int sign = parity_sign(s + x);
        ExactReal weight(Rational(sign * x.multiplicity()));
        lhs.add(weight * s1 * s2 * s3);
        lhs_f += sign * x.multiplicity() * s1.to_double() * s2.to_double() * s3.to_double();
    }
    const ExactReal r1 = sixj(p, q, r, e, a, d);
    const ExactReal r2 = sixj(p, q, r, f, b, c);
    IdentityResidual out;
    out.exact = lhs - SurdSum(r1 * r2);
    out.numeric = std::abs(lhs_f - r1.to_double() * r2.to_double());
    return out;
}

///
/// Orthogonality: sum_x (2x+1) {a b x; c d p} {a b x; c d q} = delta_pq / (2p+1),
/// valid when (a d p), (c b p), (a d q), (c b q) are triads.
///
inline IdentityResidual check_orthogonality(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt p, HalfInt q) {
    SurdSum lhs;
    double lhs_f = 0.0;
    for (int tx = std::abs(a.twice() - b.twice()); tx <= a.twice() + b.twice(); tx += 2) {
        const HalfInt x = HalfInt::from_twice(tx);
        const ExactReal s1 = sixj(a, b, x, c, d, p);
        const ExactReal s2 = sixj(a, b, x, c, d, q);
        if (s1.is_zero() || s2.is_zero())
            continue;
        lhs.add(ExactReal(Rational(x.multiplicity())) * s1 * s2);
        lhs_f += x.multiplicity() * s1.to_double() * s2.to_double();
    }
    IdentityResidual out;
    SurdSum rhs;
    double rhs_f = 0.0;
    if (p == q) {
        Rational v(1, p.multiplicity());
        rhs = SurdSum(ExactReal(v));
        rhs_f = 1.0 / p.multiplicity();
    }
    out.exact = lhs - rhs;
    out.numeric = std::abs(lhs_f - rhs_f);
    return out;
}

} // namespace spinnet

#endif // SPINNET_IDENTITIES_HPP
