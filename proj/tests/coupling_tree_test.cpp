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

#include <spinnet/coupling_tree.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

using spinnet::CouplingTree;
using spinnet::HalfInt;
using spinnet::KLabeling;
using spinnet::SpinContext;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

SpinContext ctx_of(std::vector<int> jt, int Jt) {
    SpinContext c;
    for (int x : jt)
        c.j.push_back(h(x));
    c.J = h(Jt);
    return c;
}

long parse_error_position(const char* s) {
    try {
        (void)spinnet::parse_tree(s);
    } catch (const spinnet::ParseError& e) {
        return static_cast<long>(e.position());
    }
    return -1;
}

// Multiplicity of J by expanding the product one spin at a time in the
// uncoupled basis: count states with M = J minus states with M = J + 1.
std::size_t multiplicity_by_m_counting(const std::vector<int>& jt, int Jt) {
    std::map<int, std::size_t> count{{0, 1}};
    for (int j : jt) {
        std::map<int, std::size_t> next;
        for (const auto& [m, c] : count)
            for (int mj = -j; mj <= j; mj += 2)
                next[m + mj] += c;
        count = std::move(next);
    }
    const std::size_t at = count.count(Jt) ? count[Jt] : 0;
    const std::size_t above = count.count(Jt + 2) ? count[Jt + 2] : 0;
    return at - above;
}

} // namespace

// ---- trees -------------------------------------------------------------------

TEST(CouplingTree, BuildAndInspect) {
    const CouplingTree t = spinnet::parse_tree("((1 2) 3)");
    EXPECT_EQ(t.leaf_count(), 3);
    EXPECT_EQ(t.internal_count(), 2);
    EXPECT_EQ(t, spinnet::left_comb(3));
    EXPECT_EQ(t.leaf_order(), (std::vector<int>{1, 2, 3}));
    // post-order: (1 2) first, root last
    EXPECT_EQ(t.node(t.internal_node(0)).leaf_set, 0b011u);
    EXPECT_EQ(t.internal_node(1), t.root());
    EXPECT_EQ(spinnet::parse_tree("(1 (2 3))"), spinnet::right_comb(3));
    EXPECT_EQ(CouplingTree().encode(), "(1 2)");
}

TEST(CouplingTree, JoinRejectsSharedLeaves) {
    EXPECT_THROW(CouplingTree::join(CouplingTree::leaf(1), CouplingTree::leaf(1)), spinnet::DomainError);
    EXPECT_THROW(CouplingTree::leaf(0), spinnet::DomainError);
}

TEST(Encoding, CanonicalSpacing) {
    EXPECT_EQ(spinnet::parse_tree("((1 2)(3 4))").encode(), "((1 2)(3 4))");
    EXPECT_EQ(spinnet::parse_tree("  (  (1   2)  (3 4) ) ").encode(), "((1 2)(3 4))");
    EXPECT_EQ(spinnet::parse_tree("((1 2)3)").encode(), "((1 2) 3)");
    EXPECT_EQ(spinnet::parse_tree("(3(1 2))").encode(), "(3 (1 2))");
    EXPECT_EQ(spinnet::encode_tree(spinnet::left_comb(4)), "(((1 2) 3) 4)");
}

TEST(Encoding, RoundTripsForAllTrees) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& t : spinnet::enumerate_trees(n)) {
            EXPECT_EQ(spinnet::parse_tree(t.encode()), t);
            EXPECT_EQ(spinnet::parse_tree(t.encode()).encode(), t.encode());
        }
}

TEST(Encoding, ParseErrorsCarryPosition) {
    EXPECT_EQ(parse_error_position("((1 1) 2)"), 5); // duplicate leaf, at the closing ')'
    EXPECT_EQ(parse_error_position("((1 2) 3"), 8);  // unbalanced
    EXPECT_EQ(parse_error_position("((1 2) 3))"), 9);
    EXPECT_EQ(parse_error_position("(1 x)"), 3);
    EXPECT_EQ(parse_error_position("(0 1)"), 1);
    EXPECT_EQ(parse_error_position("1"), 1);       // single leaf
    EXPECT_EQ(parse_error_position("(1 3)"), 5);   // not 1..N
    EXPECT_EQ(parse_error_position(""), 0);
    EXPECT_EQ(parse_error_position("(1 2 3)"), 5); // ternary node
}

TEST(Encoding, Json) {
    const CouplingTree t = spinnet::parse_tree("((2 1) 3)");
    const auto j = spinnet::to_json(t);
    EXPECT_EQ(j.dump(), R"({"leaves":[2,1,3],"shape":[[0,1],2]})");
    EXPECT_EQ(spinnet::tree_from_json(j), t);
    for (const auto& u : spinnet::enumerate_trees(3))
        EXPECT_EQ(spinnet::tree_from_json(spinnet::to_json(u)), u);
    EXPECT_THROW(spinnet::tree_from_json(nlohmann::json::parse(R"({"leaves":[1,1],"shape":[0,1]})")),
                 spinnet::DomainError);
    EXPECT_EQ(spinnet::to_json(h(3)).dump(), R"({"twice":3})");
    EXPECT_EQ(spinnet::half_int_from_json(spinnet::to_json(h(-5))), h(-5));
}

// ---- enumeration -------------------------------------------------------------

TEST(EnumerateTrees, NOne) {
    const auto trees = spinnet::enumerate_trees(1);
    ASSERT_EQ(trees.size(), 2u);
    EXPECT_EQ(trees[0].encode(), "(1 2)");
    EXPECT_EQ(trees[1].encode(), "(2 1)");
}

TEST(EnumerateTrees, CountsMatchFactorialFormula) {
    // (2n)!/n!
    const std::size_t expect[] = {0, 2, 12, 120, 1680, 30240};
    for (int n = 1; n <= 5; ++n)
        EXPECT_EQ(spinnet::enumerate_trees(n).size(), expect[n]) << "n=" << n;
}

TEST(EnumerateTrees, SortedDistinctPermutationTrees) {
    for (int n = 1; n <= 4; ++n) {
        const auto trees = spinnet::enumerate_trees(n);
        std::set<std::string> seen;
        std::string prev;
        for (const auto& t : trees) {
            EXPECT_TRUE(t.is_permutation_tree());
            EXPECT_EQ(t.leaf_count(), n + 1);
            EXPECT_TRUE(seen.insert(t.encode()).second);
            EXPECT_LT(prev, t.encode());
            prev = t.encode();
        }
    }
}

TEST(EnumerateTrees, CapIsEnforced) {
    try {
        (void)spinnet::enumerate_trees(7);
        FAIL() << "expected ResourceError";
    } catch (const spinnet::ResourceError& e) {
        EXPECT_NE(std::string(e.what()).find("6"), std::string::npos);
    }
    EXPECT_THROW((void)spinnet::enumerate_trees(3, 2), spinnet::ResourceError);
    EXPECT_THROW((void)spinnet::enumerate_trees(0), spinnet::DomainError);
}

// ---- labelings ---------------------------------------------------------------

TEST(KLabelings, TwoSpinsHalf) {
    const auto b = spinnet::enumerate_klabelings(spinnet::parse_tree("(1 2)"), ctx_of({1, 1}, 2));
    ASSERT_EQ(b.dimension(), 1u);
    EXPECT_EQ(b.states[0].k, (std::vector<HalfInt>{h(2)}));
}

TEST(KLabelings, FourSpinHalves) {
    // oracle: M-counting in the uncoupled product (see helper)
    EXPECT_EQ(multiplicity_by_m_counting({1, 1, 1, 1}, 0), 2u);
    EXPECT_EQ(multiplicity_by_m_counting({1, 1, 1, 1}, 2), 3u);
    EXPECT_EQ(multiplicity_by_m_counting({1, 1, 1, 1}, 4), 1u);
    for (const auto& t : spinnet::enumerate_trees(3)) {
        EXPECT_EQ(spinnet::enumerate_klabelings(t, ctx_of({1, 1, 1, 1}, 0)).dimension(), 2u);
        EXPECT_EQ(spinnet::enumerate_klabelings(t, ctx_of({1, 1, 1, 1}, 2)).dimension(), 3u);
        EXPECT_EQ(spinnet::enumerate_klabelings(t, ctx_of({1, 1, 1, 1}, 4)).dimension(), 1u);
    }
    EXPECT_EQ(spinnet::recoupling_dimension(ctx_of({1, 1, 1, 1}, 2)), 3u);
}

TEST(KLabelings, EmptyBasisAllowed) {
    EXPECT_EQ(spinnet::enumerate_klabelings(spinnet::left_comb(3), ctx_of({1, 1, 1}, 0)).dimension(), 0u);
    EXPECT_EQ(spinnet::recoupling_dimension(ctx_of({1, 1}, 6)), 0u);
}

TEST(KLabelings, LexicographicAndAdmissible) {
    const SpinContext ctx = ctx_of({2, 3, 1, 2}, 2);
    for (const auto& t : spinnet::enumerate_trees(3)) {
        const auto b = spinnet::enumerate_klabelings(t, ctx);
        EXPECT_TRUE(std::is_sorted(b.states.begin(), b.states.end()));
        EXPECT_EQ(std::adjacent_find(b.states.begin(), b.states.end()), b.states.end());
        for (std::size_t i = 0; i < b.dimension(); ++i) {
            const KLabeling& lab = b.states[i];
            EXPECT_EQ(b.index_of(lab), i);
            EXPECT_EQ(lab.k.back(), ctx.J);
            // independent triad check, walking the node table directly
            for (int pos = 0; pos <= t.root(); ++pos) {
                const auto& n = t.node(pos);
                if (n.is_leaf())
                    continue;
                auto spin = [&](int p) {
                    const auto& m = t.node(p);
                    return m.is_leaf() ? ctx.j[static_cast<std::size_t>(m.leaf - 1)]
                                       : lab.k[static_cast<std::size_t>(t.internal_index(p))];
                };
                EXPECT_TRUE(spinnet::admissible(spin(n.left), spin(n.right), spin(pos)));
            }
        }
    }
}

TEST(Dimension, TwoSpinsIsOne) {
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b)
            for (int J = std::abs(a - b); J <= a + b; J += 2)
                EXPECT_EQ(spinnet::recoupling_dimension(ctx_of({a, b}, J)), 1u);
}

TEST(Dimension, SpinZeroIsTransparent) {
    for (int J = 0; J <= 6; ++J)
        EXPECT_EQ(spinnet::recoupling_dimension(ctx_of({1, 0, 2, 3}, J)), spinnet::recoupling_dimension(ctx_of({1, 2, 3}, J)));
}

TEST(Dimension, TreeInvariantAndComplete) {
    for (int n = 1; n <= 3; ++n) {
        const auto trees = spinnet::enumerate_trees(n);
        std::vector<int> jt(static_cast<std::size_t>(n + 1), 0);
        std::function<void(std::size_t)> walk = [&](std::size_t i) {
            if (i < jt.size()) {
                for (int x = 0; x <= 3; ++x) {
                    jt[i] = x;
                    walk(i + 1);
                }
                return;
            }
            int total = 0, product = 1;
            for (int x : jt) {
                total += x;
                product *= x + 1;
            }
            long sum = 0;
            for (int J = total % 2; J <= total; J += 2) {
                const SpinContext ctx = ctx_of(jt, J);
                const std::size_t dim = spinnet::recoupling_dimension(ctx);
                EXPECT_EQ(dim, multiplicity_by_m_counting(jt, J));
                for (const auto& t : trees)
                    ASSERT_EQ(spinnet::enumerate_klabelings(t, ctx).dimension(), dim) << t.encode();
                sum += static_cast<long>((J + 1) * dim);
            }
            EXPECT_EQ(sum, product);
        };
        walk(0);
    }
}

TEST(SpinContext, Validation) {
    SpinContext c = ctx_of({1, 1}, 2);
    c.M = h(1);
    EXPECT_THROW(c.validate(), spinnet::DomainError);
    c.M = h(-2);
    EXPECT_NO_THROW(c.validate());
    EXPECT_THROW(ctx_of({1}, 1).validate(), spinnet::DomainError);
    EXPECT_THROW(ctx_of({1, -1}, 0).validate(), spinnet::DomainError);
}
