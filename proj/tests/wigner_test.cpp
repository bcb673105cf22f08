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

#include "oracles/cg_lowering.hpp"
#include "oracles/rotation.hpp"
#include "oracles/sixj_contraction.hpp"

#include <spinnet/wigner.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

using spinnet::EulerAngles;
using spinnet::ExactReal;
using spinnet::HalfInt;
using spinnet::Rational;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

ExactReal cg_t(int j1, int m1, int j2, int m2, int J, int M) { return spinnet::cgc(h(j1), h(m1), h(j2), h(m2), h(J), h(M)); }

ExactReal sixj_t(int a, int b, int c, int d, int e, int f) {
    return spinnet::sixj(h(a), h(b), h(c), h(d), h(e), h(f));
}

} // namespace

// ---- Clebsch-Gordan ----------------------------------------------------------

TEST(Cgc, CouplingToSpinZeroIsIdentity) {
    for (int j = 0; j <= 8; ++j)
        for (int m = -j; m <= j; m += 2)
            EXPECT_EQ(cg_t(j, m, 0, 0, j, m), ExactReal(1));
}

TEST(Cgc, StretchedStateIsPlusOne) { EXPECT_EQ(cg_t(1, 1, 1, 1, 2, 2), ExactReal(1)); }

TEST(Cgc, SingletComponent) {
    // lowering-operator construction gives 1/sqrt(2)
    EXPECT_NEAR(oracle::cg(1, 1, 1, -1, 0, 0), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(cg_t(1, 1, 1, -1, 0, 0), ExactReal::sqrt(Rational(1, 2)));
    EXPECT_EQ(cg_t(1, 1, 1, -1, 0, 0).str(), "sqrt(2)/2");
    EXPECT_EQ(cg_t(1, -1, 1, 1, 0, 0), -ExactReal::sqrt(Rational(1, 2)));
}

TEST(Cgc, ZeroWhenSelectionRulesFail) {
    EXPECT_TRUE(cg_t(1, 1, 1, 1, 0, 0).is_zero());  // M != m1 + m2
    EXPECT_TRUE(cg_t(2, 0, 2, 0, 6, 0).is_zero());  // triad (1,1,3)
    EXPECT_TRUE(cg_t(2, 0, 2, 0, 2, 0).is_zero()); // genuine zero of <1 0 1 0|1 0>
}

TEST(Cgc, MalformedQuantumNumbersThrow) {
    EXPECT_THROW(cg_t(1, 3, 1, -1, 0, 0), spinnet::DomainError);  // |m| > j
    EXPECT_THROW(cg_t(2, 1, 1, 1, 1, 2), spinnet::DomainError);   // parity of m1
    EXPECT_THROW(cg_t(1, 1, 1, 1, 2, 1), spinnet::DomainError);   // parity of M
    EXPECT_THROW(cg_t(-2, 0, 1, 1, 1, 1), spinnet::DomainError);  // negative spin
}

TEST(Cgc, MatchesLoweringOperatorOracle) {
    for (int j1 = 0; j1 <= 6; ++j1)
        for (int j2 = 0; j2 <= 6; ++j2)
            for (int J = std::abs(j1 - j2); J <= j1 + j2; J += 2)
                for (int m1 = -j1; m1 <= j1; m1 += 2)
                    for (int m2 = -j2; m2 <= j2; m2 += 2) {
                        const int M = m1 + m2;
                        if (std::abs(M) > J)
                            continue;
                        EXPECT_NEAR(cg_t(j1, m1, j2, m2, J, M).to_double(), oracle::cg(j1, m1, j2, m2, J, M), 1e-13)
                            << j1 << " " << m1 << " " << j2 << " " << m2 << " " << J << " " << M;
                    }
}

TEST(Cgc, ExactOrthogonality) {
    for (int j1 = 0; j1 <= 5; ++j1)
        for (int j2 = 0; j2 <= 5; ++j2)
            for (int J = std::abs(j1 - j2); J <= j1 + j2; J += 2)
                for (int Jp = std::abs(j1 - j2); Jp <= j1 + j2; Jp += 2)
                    for (int M = -std::min(J, Jp); M <= std::min(J, Jp); M += 2) {
                        spinnet::SurdSum s;
                        for (int m1 = -j1; m1 <= j1; m1 += 2) {
                            const int m2 = M - m1;
                            if (std::abs(m2) > j2)
                                continue;
                            s.add(cg_t(j1, m1, j2, m2, J, M) * cg_t(j1, m1, j2, m2, Jp, M));
                        }
                        EXPECT_EQ(s, spinnet::SurdSum(J == Jp ? 1 : 0));
                    }
}

// ---- 6j ----------------------------------------------------------------------

TEST(Sixj, SpinZeroEntry) {
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            for (int c = 0; c <= 8; ++c) {
                if (!spinnet::admissible(h(a), h(b), h(c)))
                    continue;
                const long sign = ((a + b + c) / 2) % 2 == 0 ? 1 : -1;
                const ExactReal expect =
                    ExactReal(sign) * ExactReal::sqrt(Rational(1, (b + 1) * (c + 1)));
                EXPECT_EQ(sixj_t(a, b, c, 0, c, b), expect);
            }
}

TEST(Sixj, FrozenValues) {
    // oracle values: CG contraction (see SixjOracle tests below)
    EXPECT_EQ(sixj_t(2, 2, 2, 2, 2, 2).str(), "1/6");
    EXPECT_EQ(sixj_t(1, 1, 2, 1, 1, 2).str(), "1/6");
    EXPECT_EQ(sixj_t(4, 2, 2, 3, 1, 3).str(), "sqrt(30)/60");
    EXPECT_EQ(sixj_t(2, 2, 6, 2, 2, 2).str(), "0");
}

TEST(SixjOracle, ContractionReproducesFrozenValues) {
    EXPECT_EQ(oracle::sixj_by_contraction(2, 2, 2, 2, 2, 2), spinnet::SurdSum(ExactReal(Rational(1, 6))));
    EXPECT_EQ(oracle::sixj_by_contraction(1, 1, 2, 1, 1, 2), spinnet::SurdSum(ExactReal(Rational(1, 6))));
    EXPECT_EQ(oracle::sixj_by_contraction(4, 2, 2, 3, 1, 3), spinnet::SurdSum(ExactReal(Rational(1, 60), 30)));
}

TEST(Sixj, MatchesContractionUpToTwiceThree) {
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (int d = 0; d <= 3; ++d)
                    for (int e = 0; e <= 3; ++e)
                        for (int f = 0; f <= 3; ++f) {
                            if (!spinnet::sixj_admissible(h(a), h(b), h(c), h(d), h(e), h(f)))
                                continue;
                            EXPECT_EQ(spinnet::SurdSum(sixj_t(a, b, c, d, e, f)),
                                      oracle::sixj_by_contraction(a, b, c, d, e, f))
                                << a << b << c << d << e << f;
                        }
}

TEST(Sixj, TwentyFourSymmetries) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(0, 12);
    int tested = 0;
    while (tested < 200) {
        std::array<HalfInt, 6> s;
        for (auto& x : s)
            x = h(pick(rng));
        if (!spinnet::sixj_admissible(s[0], s[1], s[2], s[3], s[4], s[5]))
            continue;
        ++tested;
        const ExactReal ref = spinnet::detail::sixj_racah(s[0], s[1], s[2], s[3], s[4], s[5]);
        const auto sym = spinnet::sixj_symmetries(s);
        ASSERT_EQ(sym.size(), 24u);
        for (const auto& t : sym) {
            EXPECT_EQ(spinnet::detail::sixj_racah(t[0], t[1], t[2], t[3], t[4], t[5]), ref);
            EXPECT_EQ(spinnet::sixj(t[0], t[1], t[2], t[3], t[4], t[5]), ref);
        }
    }
}

// Every symbol with an inadmissible triad is exactly zero. The converse
// does not hold: a few admissible symbols vanish. Those must agree with
// the contraction oracle, i.e. they are genuine zeros.
TEST(Sixj, ZeroFilterScan) {
    int nontrivial = 0;
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            for (int c = 0; c <= 8; ++c)
                for (int d = 0; d <= 8; ++d)
                    for (int e = 0; e <= 8; ++e)
                        for (int f = 0; f <= 8; ++f) {
                            const bool adm = spinnet::sixj_admissible(h(a), h(b), h(c), h(d), h(e), h(f));
                            const ExactReal v = sixj_t(a, b, c, d, e, f);
                            if (!adm) {
                                ASSERT_TRUE(v.is_zero());
                            } else if (v.is_zero()) {
                                ++nontrivial;
                                EXPECT_TRUE(oracle::sixj_by_contraction(a, b, c, d, e, f).is_zero());
                            }
                        }
    RecordProperty("nontrivial_zeros", nontrivial);
}

TEST(Sixj, FloatConversionLargeSpins) {
    // orthogonality sum_x (2x+1)(2p+1) {a b x; c d p}^2 = 1, evaluated through
    // the double-valued symbols, near the top of the supported range
    const int a = 96, b = 100, c = 98, d = 94;
    for (int p : {4, 50, 100, 150}) {
        double s = 0.0;
        for (int x = 0; x <= 200; x += 2) {
            const double v = sixj_t(a, b, x, c, d, p).to_double();
            s += (x + 1) * (p + 1) * v * v;
        }
        EXPECT_NEAR(s, 1.0, 1e-12) << "p=" << p;
    }
}

TEST(Sixj, MemoIsCanonicalized) {
    spinnet::detail::sixj_cache().clear();
    (void)sixj_t(2, 4, 6, 4, 2, 4);
    const auto n = spinnet::detail::sixj_cache().size();
    (void)sixj_t(4, 2, 6, 2, 4, 4); // column swap
    (void)sixj_t(4, 2, 4, 2, 4, 6); // row swap in two columns
    EXPECT_EQ(spinnet::detail::sixj_cache().size(), n);
}

// ---- rotations ---------------------------------------------------------------

TEST(EulerAngles, Canonicalization) {
    const double pi = std::numbers::pi;
    const EulerAngles a(-0.5, 0.3, 7.0);
    EXPECT_NEAR(a.alpha(), 2 * pi - 0.5, 1e-15);
    EXPECT_NEAR(a.gamma(), 7.0 - 2 * pi, 1e-15);
    const EulerAngles b(0.2, 4.0, 0.1); // beta past pi folds back
    EXPECT_NEAR(b.beta(), 2 * pi - 4.0, 1e-15);
    EXPECT_NEAR(b.alpha(), 0.2 + pi, 1e-15);
    EXPECT_NEAR(b.gamma(), 0.1 + pi, 1e-15);
    // same SO(3) element
    EXPECT_LT((oracle::so3(0.2, 4.0, 0.1) - oracle::so3(b.alpha(), b.beta(), b.gamma())).norm(), 1e-14);
}

TEST(SmallD, IdentityAtZero) {
    for (int j = 0; j <= 10; ++j)
        for (int m = -j; m <= j; m += 2)
            for (int mp = -j; mp <= j; mp += 2)
                EXPECT_EQ(spinnet::wigner_small_d(h(j), h(m), h(mp), 0.0), m == mp ? 1.0 : 0.0);
}

TEST(SmallD, ClosedForms) {
    for (double beta : {0.1, 0.7, 1.9, 3.0}) {
        EXPECT_NEAR(spinnet::wigner_small_d(h(1), h(1), h(1), beta), std::cos(beta / 2), 1e-15);
        EXPECT_NEAR(spinnet::wigner_small_d(h(1), h(1), h(-1), beta), -std::sin(beta / 2), 1e-15);
        EXPECT_NEAR(spinnet::wigner_small_d(h(2), h(0), h(0), beta), std::cos(beta), 1e-15);
    }
}

TEST(SmallD, MatchesExponentialOracle) {
    for (int j = 0; j <= 10; ++j)
        for (double beta : {0.0, 0.4, 1.3, 2.2, 3.1}) {
            const Eigen::MatrixXd ref = oracle::small_d_by_exponential(j, beta);
            const Eigen::MatrixXd got = spinnet::wigner_small_d_matrix(h(j), beta);
            EXPECT_LT((ref - got).cwiseAbs().maxCoeff(), 1e-12) << "j2=" << j << " beta=" << beta;
        }
}

TEST(SmallD, Orthogonality) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> beta(0.0, std::numbers::pi);
    for (int j = 0; j <= 20; ++j)
        for (int i = 0; i < 5; ++i) {
            const Eigen::MatrixXd d = spinnet::wigner_small_d_matrix(h(j), beta(rng));
            EXPECT_LT((d * d.transpose() - Eigen::MatrixXd::Identity(j + 1, j + 1)).cwiseAbs().maxCoeff(), 1e-12);
        }
}

TEST(SmallD, DomainErrors) {
    EXPECT_THROW(spinnet::wigner_small_d(h(1), h(3), h(1), 0.1), spinnet::DomainError);
    EXPECT_THROW(spinnet::wigner_small_d(h(2), h(1), h(0), 0.1), spinnet::DomainError);
    EXPECT_THROW(spinnet::wigner_D(h(2), h(0), h(4), EulerAngles()), spinnet::DomainError);
}

TEST(BigD, IdentityAndModulus) {
    for (int j = 0; j <= 6; ++j) {
        const Eigen::MatrixXcd id = spinnet::wigner_D_matrix(h(j), EulerAngles(0, 0, 0));
        EXPECT_LT((id - Eigen::MatrixXcd::Identity(j + 1, j + 1)).norm(), 1e-15);
        const EulerAngles ang(0.3, 1.1, -2.0);
        for (int m = -j; m <= j; m += 2)
            for (int mp = -j; mp <= j; mp += 2)
                EXPECT_NEAR(std::abs(spinnet::wigner_D(h(j), h(m), h(mp), ang)),
                            std::abs(spinnet::wigner_small_d(h(j), h(m), h(mp), ang.beta())), 1e-15);
    }
}

TEST(BigD, SpinHalfMatchesSu2Oracle) {
    const EulerAngles ang(0.3, 1.1, 2.0);
    const Eigen::MatrixXcd d = spinnet::wigner_D_matrix(h(1), ang);
    EXPECT_LT((d - oracle::su2(ang.alpha(), ang.beta(), ang.gamma())).norm(), 1e-15);
}

TEST(BigD, CompositionMatchesRotationOracle) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> any(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const EulerAngles r1(any(rng), any(rng), any(rng)), r2(any(rng), any(rng), any(rng));
        const auto e = oracle::extract_zyz(oracle::so3(r1.alpha(), r1.beta(), r1.gamma()) *
                                           oracle::so3(r2.alpha(), r2.beta(), r2.gamma()));
        const EulerAngles r12(e.alpha, e.beta, e.gamma);
        const int eps = oracle::su2_sign(oracle::su2(r1.alpha(), r1.beta(), r1.gamma()) *
                                             oracle::su2(r2.alpha(), r2.beta(), r2.gamma()),
                                         oracle::su2(r12.alpha(), r12.beta(), r12.gamma()));
        for (int j = 0; j <= 10; ++j) {
            const double sign = (j % 2 == 1) ? eps : 1.0;
            const Eigen::MatrixXcd lhs = spinnet::wigner_D_matrix(h(j), r1) * spinnet::wigner_D_matrix(h(j), r2);
            const Eigen::MatrixXcd rhs = sign * spinnet::wigner_D_matrix(h(j), r12);
            EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12) << "j2=" << j;
        }
    }
}
