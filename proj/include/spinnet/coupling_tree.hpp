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
/// \file spinnet/coupling_tree.hpp
///
/// \brief Binary coupling schemes of n+1 angular momenta and their bases.
///
/// A CouplingTree is a full binary tree whose leaves carry the indices
/// 1..n+1 of the external spins, in any order. Nodes are stored in
/// post-order, so the root is the last node and every subtree occupies a
/// contiguous range ending at its own root. Internal nodes are numbered
/// 0..n-1 in the same post-order; that number keys KLabeling entries and
/// Move targets.
///
/// Text form: "((1 2)(3 4))", "((1 2) 3)", "(1 (2 3))". Children are
/// separated by one space except between ')' and '('.
///

#ifndef SPINNET_COUPLING_TREE_HPP
#define SPINNET_COUPLING_TREE_HPP

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "half_int.hpp"

namespace spinnet {

/// Raised when a request would exceed a configured size cap.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxLeaves = 64;

class CouplingTree {
  public:
    struct Node {
        int left = -1; // node positions; -1 for leaves
        int right = -1;
        int leaf = 0; // external spin index (1-based) for leaves, 0 otherwise
        std::uint64_t leaf_set = 0;

        bool is_leaf() const { return left < 0; }
        friend bool operator==(const Node&, const Node&) = default;
    };

    /// The two-leaf tree (1 2).
    CouplingTree() : CouplingTree(join(leaf(1), leaf(2))) {}

    static CouplingTree leaf(int index) {
        if (index < 1 || index > kMaxLeaves)
            throw DomainError("leaf index " + std::to_string(index) + " out of range");
        CouplingTree t(Empty{});
        t.nodes_.push_back(Node{-1, -1, index, std::uint64_t{1} << (index - 1)});
        t.internal_index_.push_back(-1);
        return t;
    }

    /// (left right). Throws DomainError if the two subtrees share a leaf.
    static CouplingTree join(const CouplingTree& left, const CouplingTree& right) {
        if (left.leaf_set() & right.leaf_set())
            throw DomainError("join: subtrees share a leaf");
        CouplingTree t(Empty{});
        t.nodes_.reserve(left.nodes_.size() + right.nodes_.size() + 1);
        t.nodes_ = left.nodes_;
        const int offset = static_cast<int>(left.nodes_.size());
        for (Node n : right.nodes_) {
            if (!n.is_leaf()) {
                n.left += offset;
                n.right += offset;
            }
            t.nodes_.push_back(n);
        }
        t.nodes_.push_back(Node{offset - 1, static_cast<int>(t.nodes_.size()) - 1, 0,
                                left.leaf_set() | right.leaf_set()});
        t.reindex();
        return t;
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(int pos) const { return nodes_.at(static_cast<std::size_t>(pos)); }
    int root() const { return static_cast<int>(nodes_.size()) - 1; }
    int leaf_count() const { return static_cast<int>(nodes_.size() + 1) / 2; }
    int internal_count() const { return static_cast<int>(internal_nodes_.size()); }
    std::uint64_t leaf_set() const { return nodes_.back().leaf_set; }

    /// Node position of internal node k (post-order among internal nodes).
    int internal_node(int k) const {
        if (k < 0 || k >= internal_count())
            throw DomainError("internal node index " + std::to_string(k) + " out of range");
        return internal_nodes_[static_cast<std::size_t>(k)];
    }
    /// Inverse of internal_node; -1 for leaves.
    int internal_index(int pos) const { return internal_index_.at(static_cast<std::size_t>(pos)); }

    /// Position of the internal node whose subtree has exactly these leaves.
    std::optional<int> find_internal(std::uint64_t leaf_set) const {
        for (int k = 0; k < internal_count(); ++k)
            if (nodes_[static_cast<std::size_t>(internal_nodes_[static_cast<std::size_t>(k)])].leaf_set == leaf_set)
                return k;
        return std::nullopt;
    }

    /// Subtree rooted at a node position, as a standalone tree.
    CouplingTree subtree(int pos) const {
        const Node& n = node(pos);
        if (n.is_leaf())
            return leaf(n.leaf);
        return join(subtree(n.left), subtree(n.right));
    }

    /// Leaf indices from left to right.
    std::vector<int> leaf_order() const {
        std::vector<int> out;
        for (const Node& n : nodes_)
            if (n.is_leaf())
                out.push_back(n.leaf);
        return out;
    }

    /// Same shape with leaf i replaced by labels[i-1].
    CouplingTree relabeled(const std::vector<int>& labels) const {
        CouplingTree t = *this;
        for (Node& n : t.nodes_)
            if (n.is_leaf()) {
                n.leaf = labels.at(static_cast<std::size_t>(n.leaf - 1));
                n.leaf_set = std::uint64_t{1} << (n.leaf - 1);
            }
        for (Node& n : t.nodes_)
            if (!n.is_leaf())
                n.leaf_set = t.nodes_[static_cast<std::size_t>(n.left)].leaf_set |
                             t.nodes_[static_cast<std::size_t>(n.right)].leaf_set;
        return t;
    }

    /// True when the leaves are exactly 1..leaf_count().
    bool is_permutation_tree() const {
        const int n = leaf_count();
        const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
        return leaf_set() == full;
    }

    std::string encode() const {
        std::string out;
        encode_into(root(), out);
        return out;
    }

    friend bool operator==(const CouplingTree& a, const CouplingTree& b) { return a.nodes_ == b.nodes_; }

  private:
    struct Empty {};
    explicit CouplingTree(Empty) {}

    void reindex() {
        internal_nodes_.clear();
        internal_index_.assign(nodes_.size(), -1);
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (!nodes_[i].is_leaf()) {
                internal_index_[i] = static_cast<int>(internal_nodes_.size());
                internal_nodes_.push_back(static_cast<int>(i));
            }
    }

    void encode_into(int pos, std::string& out) const {
        const Node& n = node(pos);
        if (n.is_leaf()) {
            out += std::to_string(n.leaf);
            return;
        }
        out += '(';
        encode_into(n.left, out);
        const bool tight = !node(n.left).is_leaf() && !node(n.right).is_leaf();
        if (!tight)
            out += ' ';
        encode_into(n.right, out);
        out += ')';
    }

    std::vector<Node> nodes_;
    std::vector<int> internal_nodes_;
    std::vector<int> internal_index_;
};

namespace detail {

class TreeParser {
  public:
    explicit TreeParser(std::string_view text) : s_(text) {}

    CouplingTree parse() {
        skip_ws();
        CouplingTree t = node();
        skip_ws();
        if (i_ != s_.size())
            fail("trailing characters");
        if (t.leaf_count() < 2)
            fail("a coupling tree needs at least two leaves");
        if (!t.is_permutation_tree())
            fail("leaf indices must be exactly 1.." + std::to_string(t.leaf_count()));
        return t;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("tree parse error at position " + std::to_string(i_) + ": " + what, i_);
    }

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    CouplingTree node() {
        skip_ws();
        if (i_ >= s_.size())
            fail("unexpected end of input");
        if (s_[i_] == '(') {
            ++i_;
            CouplingTree l = node();
            CouplingTree r = node();
            skip_ws();
            if (i_ >= s_.size() || s_[i_] != ')')
                fail("expected ')'");
            const std::size_t at = i_;
            ++i_;
            if (l.leaf_set() & r.leaf_set()) {
                i_ = at;
                fail("duplicate leaf");
            }
            return CouplingTree::join(l, r);
        }
        if (!std::isdigit(static_cast<unsigned char>(s_[i_])))
            fail(std::string("unexpected character '") + s_[i_] + "'");
        const std::size_t start = i_;
        long v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = v * 10 + (s_[i_] - '0');
            if (v > kMaxLeaves) {
                i_ = start;
                fail("leaf index too large");
            }
            ++i_;
        }
        if (v < 1) {
            i_ = start;
            fail("leaf indices start at 1");
        }
        return CouplingTree::leaf(static_cast<int>(v));
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

} // namespace detail

/// Parses the text form. Throws ParseError carrying the offending position.
inline CouplingTree parse_tree(std::string_view text) { return detail::TreeParser(text).parse(); }

inline std::string encode_tree(const CouplingTree& t) { return t.encode(); }

/// ((..((1 2) 3)..) N)
inline CouplingTree left_comb(int leaves) {
    CouplingTree t = CouplingTree::leaf(1);
    for (int i = 2; i <= leaves; ++i)
        t = CouplingTree::join(t, CouplingTree::leaf(i));
    return t;
}

/// (1 (2 (.. (N-1 N)..)))
inline CouplingTree right_comb(int leaves) {
    CouplingTree t = CouplingTree::leaf(leaves);
    for (int i = leaves - 1; i >= 1; --i)
        t = CouplingTree::join(CouplingTree::leaf(i), t);
    return t;
}

inline constexpr int kDefaultTreeCap = 6;

namespace detail {

/// All full binary shapes over leaves first..last, labelled in order.
inline std::vector<CouplingTree> shapes(int first, int last) {
    if (first == last)
        return {CouplingTree::leaf(first)};
    std::vector<CouplingTree> out;
    for (int split = first; split < last; ++split) {
        const auto lefts = shapes(first, split);
        const auto rights = shapes(split + 1, last);
        for (const auto& l : lefts)
            for (const auto& r : rights)
                out.push_back(CouplingTree::join(l, r));
    }
    return out;
}

} // namespace detail

///
/// Every coupling tree over n+1 leaves: all bracketings times all leaf
/// permutations, (2n)!/n! of them, sorted by encoding.
///
inline std::vector<CouplingTree> enumerate_trees(int n, int cap = kDefaultTreeCap) {
    if (n < 1)
        throw DomainError("enumerate_trees: n must be at least 1");
    if (n > cap)
        throw ResourceError("enumerate_trees: n = " + std::to_string(n) + " exceeds the cap n <= " +
                            std::to_string(cap));
    if (n + 1 > kMaxLeaves)
        throw ResourceError("enumerate_trees: at most 64 leaves are supported");
    const auto base = detail::shapes(1, n + 1);
    std::vector<int> perm(static_cast<std::size_t>(n + 1));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::pair<std::string, CouplingTree>> keyed;
    do {
        for (const auto& s : base) {
            CouplingTree t = s.relabeled(perm);
            keyed.emplace_back(t.encode(), std::move(t));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CouplingTree> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed)
        out.push_back(std::move(kv.second));
    return out;
}

///
/// External spins j_1..j_{n+1}, total spin J and optionally M.
///
struct SpinContext {
    std::vector<HalfInt> j;
    HalfInt J;
    std::optional<HalfInt> M;

    int n() const { return static_cast<int>(j.size()) - 1; }

    void validate() const {
        if (j.size() < 2)
            throw DomainError("spin context needs at least two external spins");
        for (HalfInt x : j)
            if (x.twice() < 0)
                throw DomainError("negative external spin " + x.str());
        if (J.twice() < 0)
            throw DomainError("negative total spin " + J.str());
        if (M && !valid_projection(J, *M))
            throw DomainError("M = " + M->str() + " is not a valid projection of J = " + J.str());
    }

    friend bool operator==(const SpinContext&, const SpinContext&) = default;

    /// Stable text key used for memoization.
    std::string key() const {
        std::string out;
        for (HalfInt x : j)
            out += std::to_string(x.twice()) + ",";
        out += "J" + std::to_string(J.twice());
        return out;
    }
};

/// Intermediate spins per internal node in post-order; the root entry is J.
struct KLabeling {
    std::vector<HalfInt> k;

    friend auto operator<=>(const KLabeling&, const KLabeling&) = default;
    friend bool operator==(const KLabeling&, const KLabeling&) = default;
};

/// Spin carried by a node: the external j for a leaf, the label otherwise.
inline HalfInt node_spin(const CouplingTree& t, const SpinContext& ctx, const KLabeling& lab, int pos) {
    const auto& n = t.node(pos);
    if (n.is_leaf())
        return ctx.j.at(static_cast<std::size_t>(n.leaf - 1));
    return lab.k.at(static_cast<std::size_t>(t.internal_index(pos)));
}

/// Triad check at every internal node, root fixed to J.
inline bool labeling_admissible(const CouplingTree& t, const SpinContext& ctx, const KLabeling& lab) {
    if (static_cast<int>(lab.k.size()) != t.internal_count() || lab.k.back() != ctx.J)
        return false;
    for (int k = 0; k < t.internal_count(); ++k) {
        const int pos = t.internal_node(k);
        const auto& n = t.node(pos);
        if (!admissible(node_spin(t, ctx, lab, n.left), node_spin(t, ctx, lab, n.right), lab.k[static_cast<std::size_t>(k)]))
            return false;
    }
    return true;
}

struct RecouplingBasis {
    CouplingTree tree;
    SpinContext ctx;
    std::vector<KLabeling> states; // lexicographic

    std::size_t dimension() const { return states.size(); }

    std::optional<std::size_t> index_of(const KLabeling& lab) const {
        auto it = std::lower_bound(states.begin(), states.end(), lab);
        if (it == states.end() || *it != lab)
            return std::nullopt;
        return static_cast<std::size_t>(it - states.begin());
    }
};

namespace detail {

struct PartialLabel {
    HalfInt value;
    std::vector<HalfInt> labels; // internal nodes of the subtree, post-order
};

inline std::vector<PartialLabel> subtree_labelings(const CouplingTree& t, const SpinContext& ctx, int pos) {
    const auto& n = t.node(pos);
    if (n.is_leaf())
        return {PartialLabel{ctx.j.at(static_cast<std::size_t>(n.leaf - 1)), {}}};
    const auto lefts = subtree_labelings(t, ctx, n.left);
    const auto rights = subtree_labelings(t, ctx, n.right);
    std::vector<PartialLabel> out;
    const bool at_root = pos == t.root();
    for (const auto& l : lefts)
        for (const auto& r : rights) {
            const int lo = std::abs(l.value.twice() - r.value.twice());
            const int hi = l.value.twice() + r.value.twice();
            for (int z = lo; z <= hi; z += 2) {
                if (at_root && z != ctx.J.twice())
                    continue;
                PartialLabel p{HalfInt::from_twice(z), l.labels};
                p.labels.insert(p.labels.end(), r.labels.begin(), r.labels.end());
                p.labels.push_back(p.value);
                out.push_back(std::move(p));
            }
        }
    return out;
}

} // namespace detail

///
/// All admissible intermediate-spin assignments on a tree, lexicographically
/// ordered. The basis is empty when J does not occur in the product.
///
inline RecouplingBasis enumerate_klabelings(const CouplingTree& t, const SpinContext& ctx) {
    ctx.validate();
    if (static_cast<int>(ctx.j.size()) != t.leaf_count() || !t.is_permutation_tree())
        throw DomainError("tree " + t.encode() + " does not match " + std::to_string(ctx.j.size()) + " external spins");
    RecouplingBasis basis{t, ctx, {}};
    for (auto& p : detail::subtree_labelings(t, ctx, t.root()))
        basis.states.push_back(KLabeling{std::move(p.labels)});
    std::sort(basis.states.begin(), basis.states.end());
    return basis;
}

///
/// Multiplicity of total spin J in j_1 x ... x j_{n+1}, counted along the
/// left comb.
///
inline std::size_t recoupling_dimension(const SpinContext& ctx) {
    ctx.validate();
    std::map<int, std::size_t> mult{{ctx.j[0].twice(), 1}};
    for (std::size_t i = 1; i < ctx.j.size(); ++i) {
        std::map<int, std::size_t> next;
        const int b = ctx.j[i].twice();
        for (const auto& [a, count] : mult)
            for (int z = std::abs(a - b); z <= a + b; z += 2)
                next[z] += count;
        mult = std::move(next);
    }
    auto it = mult.find(ctx.J.twice());
    const std::size_t dim = it == mult.end() ? 0 : it->second;
#ifndef NDEBUG
    if (ctx.n() <= 4)
        assert(enumerate_klabelings(right_comb(ctx.n() + 1), ctx).dimension() == dim);
#endif
    return dim;
}

// JSON forms. A tree is {"leaves": [...], "shape": nested} where leaves
// lists the leaf indices left to right and shape nests pairs of positions
// into that list: ((2 1) 3) -> {"leaves": [2, 1, 3], "shape": [[0, 1], 2]}.

namespace detail {
inline nlohmann::json shape_json(const CouplingTree& t, int pos, int& next_leaf) {
    const auto& n = t.node(pos);
    if (n.is_leaf())
        return next_leaf++;
    nlohmann::json l = shape_json(t, n.left, next_leaf);
    nlohmann::json r = shape_json(t, n.right, next_leaf);
    return nlohmann::json::array({l, r});
}

inline CouplingTree shape_from_json(const nlohmann::json& j, const std::vector<int>& leaves, int& next_leaf) {
    if (j.is_number_integer()) {
        if (j.get<int>() != next_leaf)
            throw DomainError("tree JSON: shape positions must appear in order");
        return CouplingTree::leaf(leaves.at(static_cast<std::size_t>(next_leaf++)));
    }
    if (!j.is_array() || j.size() != 2)
        throw DomainError("tree JSON: shape nodes must be integers or pairs");
    CouplingTree l = shape_from_json(j[0], leaves, next_leaf);
    CouplingTree r = shape_from_json(j[1], leaves, next_leaf);
    return CouplingTree::join(l, r);
}
} // namespace detail

inline nlohmann::json to_json(HalfInt h) { return {{"twice", h.twice()}}; }

inline HalfInt half_int_from_json(const nlohmann::json& j) { return HalfInt::from_twice(j.at("twice").get<int>()); }

inline nlohmann::json to_json(const CouplingTree& t) {
    int next = 0;
    return {{"leaves", t.leaf_order()}, {"shape", detail::shape_json(t, t.root(), next)}};
}

inline CouplingTree tree_from_json(const nlohmann::json& j) {
    const auto leaves = j.at("leaves").get<std::vector<int>>();
    int next = 0;
    CouplingTree t = detail::shape_from_json(j.at("shape"), leaves, next);
    if (next != static_cast<int>(leaves.size()) || !t.is_permutation_tree() || t.leaf_count() < 2)
        throw DomainError("tree JSON: leaves must be a permutation of 1..N with N >= 2");
    return t;
}

inline nlohmann::json to_json(const SpinContext& ctx) {
    nlohmann::json js = nlohmann::json::array();
    for (HalfInt x : ctx.j)
        js.push_back(to_json(x));
    nlohmann::json out{{"j", js}, {"J", to_json(ctx.J)}};
    if (ctx.M)
        out["M"] = to_json(*ctx.M);
    return out;
}

inline nlohmann::json to_json(const KLabeling& lab) {
    nlohmann::json out = nlohmann::json::array();
    for (HalfInt x : lab.k)
        out.push_back(to_json(x));
    return out;
}

} // namespace spinnet

#endif // SPINNET_COUPLING_TREE_HPP
