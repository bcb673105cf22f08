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
/// \file spinnet/recoupling_graph.hpp
///
/// \brief Graph of coupling trees under elementary moves.
///
/// Moves act on one internal node of a tree:
///   racah_left   ((a b) c) -> (a (b c))   needs an internal left child
///   racah_right  (a (b c)) -> ((a b) c)   needs an internal right child
///   phase_swap   (x y)     -> (y x)
/// The moved node keeps its post-order index, so the inverse of a move is
/// the opposite move at the same index (phase_swap is its own inverse).
///
/// Every vertex carries all legal moves: one phase edge per internal node
/// and one Racah edge per non-root internal node (each such node is the
/// internal child of exactly one parent). The graph is therefore regular of
/// valence 2n - 1, which is 3 only at n = 2.
///

#ifndef SPINNET_RECOUPLING_GRAPH_HPP
#define SPINNET_RECOUPLING_GRAPH_HPP

#include <nlohmann/json.hpp>

#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coupling_tree.hpp"

namespace spinnet {

enum class MoveKind { racah_left, racah_right, phase_swap };

struct Move {
    MoveKind kind = MoveKind::phase_swap;
    int node = 0; // internal-node index on the tree the move is applied to

    friend auto operator<=>(const Move&, const Move&) = default;
    friend bool operator==(const Move&, const Move&) = default;
};

inline std::string_view to_string(MoveKind k) {
    switch (k) {
    case MoveKind::racah_left:
        return "racah_left";
    case MoveKind::racah_right:
        return "racah_right";
    case MoveKind::phase_swap:
        return "phase_swap";
    }
    return "?";
}

inline MoveKind move_kind_from_string(std::string_view s) {
    if (s == "racah_left")
        return MoveKind::racah_left;
    if (s == "racah_right")
        return MoveKind::racah_right;
    if (s == "phase_swap")
        return MoveKind::phase_swap;
    throw DomainError("unknown move kind '" + std::string(s) + "'");
}

inline std::string to_string(const Move& m) { return std::string(to_string(m.kind)) + "@" + std::to_string(m.node); }

inline Move inverse(const Move& m) {
    switch (m.kind) {
    case MoveKind::racah_left:
        return {MoveKind::racah_right, m.node};
    case MoveKind::racah_right:
        return {MoveKind::racah_left, m.node};
    case MoveKind::phase_swap:
        return m;
    }
    return m;
}

inline bool is_racah(const Move& m) { return m.kind != MoveKind::phase_swap; }

inline bool is_legal(const CouplingTree& t, const Move& m) {
    if (m.node < 0 || m.node >= t.internal_count())
        return false;
    const auto& n = t.node(t.internal_node(m.node));
    switch (m.kind) {
    case MoveKind::racah_left:
        return !t.node(n.left).is_leaf();
    case MoveKind::racah_right:
        return !t.node(n.right).is_leaf();
    case MoveKind::phase_swap:
        return true;
    }
    return false;
}

namespace detail {
inline CouplingTree rebuild(const CouplingTree& t, int pos, int target, MoveKind kind) {
    const auto& n = t.node(pos);
    if (n.is_leaf())
        return CouplingTree::leaf(n.leaf);
    if (pos != target)
        return CouplingTree::join(rebuild(t, n.left, target, kind), rebuild(t, n.right, target, kind));
    switch (kind) {
    case MoveKind::racah_left: {
        const auto& ab = t.node(n.left);
        return CouplingTree::join(t.subtree(ab.left), CouplingTree::join(t.subtree(ab.right), t.subtree(n.right)));
    }
    case MoveKind::racah_right: {
        const auto& bc = t.node(n.right);
        return CouplingTree::join(CouplingTree::join(t.subtree(n.left), t.subtree(bc.left)), t.subtree(bc.right));
    }
    case MoveKind::phase_swap:
        return CouplingTree::join(t.subtree(n.right), t.subtree(n.left));
    }
    throw DomainError("unknown move kind");
}
} // namespace detail

/// Image of t under m; DomainError when m is not legal on t.
inline CouplingTree apply_move(const CouplingTree& t, const Move& m) {
    if (!is_legal(t, m))
        throw DomainError("move " + to_string(m) + " is not legal on " + t.encode());
    return detail::rebuild(t, t.root(), t.internal_node(m.node), m.kind);
}

/// Every legal single move, ordered by (kind, node).
inline std::vector<std::pair<Move, CouplingTree>> neighbors(const CouplingTree& t) {
    std::vector<std::pair<Move, CouplingTree>> out;
    for (MoveKind kind : {MoveKind::racah_left, MoveKind::racah_right, MoveKind::phase_swap})
        for (int k = 0; k < t.internal_count(); ++k) {
            Move m{kind, k};
            if (is_legal(t, m))
                out.emplace_back(m, apply_move(t, m));
        }
    return out;
}

///
/// Coupling trees over n+1 leaves with one directed edge per legal move.
/// Since every move has an inverse, the edge set is symmetric; the number of
/// undirected edges is half the number of directed ones.
///
class RecouplingGraph {
  public:
    struct Edge {
        int source;
        Move move;
        int target;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    RecouplingGraph(int n, std::vector<CouplingTree> vertices, std::vector<Edge> edges)
        : n_(n), vertices_(std::move(vertices)), edges_(std::move(edges)) {
        encodings_.reserve(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            encodings_.push_back(vertices_[i].encode());
            if (!index_.emplace(encodings_.back(), static_cast<int>(i)).second)
                throw DomainError("duplicate vertex " + encodings_.back());
        }
        adjacency_.resize(vertices_.size());
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto& edge = edges_[e];
            if (edge.source < 0 || edge.source >= vertex_count() || edge.target < 0 || edge.target >= vertex_count())
                throw DomainError("edge endpoint out of range");
            adjacency_[static_cast<std::size_t>(edge.source)].push_back(static_cast<int>(e));
        }
    }

    int n() const { return n_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    std::size_t directed_edge_count() const { return edges_.size(); }
    std::size_t undirected_edge_count() const { return edges_.size() / 2; }

    const std::vector<CouplingTree>& vertices() const { return vertices_; }
    const CouplingTree& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }
    const std::string& encoding(int i) const { return encodings_.at(static_cast<std::size_t>(i)); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& out_edges(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    int valence(int v) const { return static_cast<int>(out_edges(v).size()); }

    std::optional<int> index_of(const CouplingTree& t) const {
        auto it = index_.find(t.encode());
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<int> index_of(const std::string& encoding) const {
        auto it = index_.find(encoding);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

  private:
    int n_;
    std::vector<CouplingTree> vertices_;
    std::vector<std::string> encodings_;
    std::unordered_map<std::string, int> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

inline RecouplingGraph build_graph(int n, int cap = kDefaultTreeCap) {
    auto vertices = enumerate_trees(n, cap);
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        index.emplace(vertices[i].encode(), static_cast<int>(i));
    std::vector<RecouplingGraph::Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (const auto& [m, target] : neighbors(vertices[i]))
            edges.push_back({static_cast<int>(i), m, index.at(target.encode())});
    return RecouplingGraph(n, std::move(vertices), std::move(edges));
}

///
/// Minimum-length move sequence from src to dst by breadth-first search.
/// Out-edges are explored in (kind, node, target encoding) order, so ties
/// resolve to the lexicographically first path.
///
inline std::vector<Move> shortest_path(const RecouplingGraph& g, const CouplingTree& src, const CouplingTree& dst) {
    const auto s = g.index_of(src);
    const auto d = g.index_of(dst);
    if (!s)
        throw DomainError("shortest_path: vertex " + src.encode() + " not in graph");
    if (!d)
        throw DomainError("shortest_path: vertex " + dst.encode() + " not in graph");
    std::vector<int> via(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    std::deque<int> frontier{*s};
    seen[static_cast<std::size_t>(*s)] = 1;
    while (!frontier.empty() && !seen[static_cast<std::size_t>(*d)]) {
        const int v = frontier.front();
        frontier.pop_front();
        std::vector<int> out = g.out_edges(v);
        std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
            const auto& ea = g.edges()[static_cast<std::size_t>(a)];
            const auto& eb = g.edges()[static_cast<std::size_t>(b)];
            if (ea.move != eb.move)
                return ea.move < eb.move;
            return g.encoding(ea.target) < g.encoding(eb.target);
        });
        for (int e : out) {
            const int t = g.edges()[static_cast<std::size_t>(e)].target;
            if (seen[static_cast<std::size_t>(t)])
                continue;
            seen[static_cast<std::size_t>(t)] = 1;
            via[static_cast<std::size_t>(t)] = e;
            frontier.push_back(t);
        }
    }
    if (!seen[static_cast<std::size_t>(*d)])
        throw DomainError("shortest_path: " + dst.encode() + " unreachable from " + src.encode());
    std::vector<Move> path;
    for (int v = *d; v != *s;) {
        const auto& e = g.edges()[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])];
        path.push_back(e.move);
        v = e.source;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

enum class GraphFormat { dot, json };

inline GraphFormat graph_format_from_string(std::string_view s) {
    if (s == "dot")
        return GraphFormat::dot;
    if (s == "json")
        return GraphFormat::json;
    throw std::invalid_argument("unknown graph format '" + std::string(s) + "' (expected dot or json)");
}

inline nlohmann::json to_json(const Move& m) { return {{"kind", to_string(m.kind)}, {"node", m.node}}; }

inline Move move_from_json(const nlohmann::json& j) {
    return {move_kind_from_string(j.at("kind").get<std::string>()), j.at("node").get<int>()};
}

inline nlohmann::json to_json(const RecouplingGraph& g) {
    nlohmann::json vertices = nlohmann::json::array();
    for (int i = 0; i < g.vertex_count(); ++i)
        vertices.push_back(g.encoding(i));
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges())
        edges.push_back(nlohmann::json::array({e.source, to_json(e.move), e.target}));
    return {{"n", g.n()}, {"vertices", vertices}, {"edges", edges}};
}

/// Rebuilds a graph from its JSON export, checking every edge against the move rules.
inline RecouplingGraph graph_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    std::vector<CouplingTree> vertices;
    for (const auto& v : j.at("vertices"))
        vertices.push_back(parse_tree(v.get<std::string>()));
    std::vector<RecouplingGraph::Edge> edges;
    for (const auto& e : j.at("edges")) {
        RecouplingGraph::Edge edge{e.at(0).get<int>(), move_from_json(e.at(1)), e.at(2).get<int>()};
        edges.push_back(edge);
    }
    RecouplingGraph g(n, std::move(vertices), std::move(edges));
    for (const auto& e : g.edges())
        if (!(apply_move(g.vertex(e.source), e.move) == g.vertex(e.target)))
            throw DomainError("graph JSON: edge " + to_string(e.move) + " does not map " + g.encoding(e.source) +
                              " to " + g.encoding(e.target));
    return g;
}

///
/// DOT (undirected, one line per edge with move-kind label "racah" or
/// "phase") or JSON (vertex list plus directed edge triples). Output depends
/// only on the graph.
///
inline std::string export_graph(const RecouplingGraph& g, GraphFormat format) {
    if (format == GraphFormat::json)
        return to_json(g).dump(1) + "\n";
    std::ostringstream os;
    os << "graph recoupling_n" << g.n() << " {\n";
    for (int i = 0; i < g.vertex_count(); ++i)
        os << "  v" << i << " [label=\"" << g.encoding(i) << "\"];\n";
    for (const auto& e : g.edges()) {
        if (e.source >= e.target)
            continue;
        os << "  v" << e.source << " -- v" << e.target << " [label=\"" << (is_racah(e.move) ? "racah" : "phase")
           << "\", move=\"" << to_string(e.move) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace spinnet

#endif // SPINNET_RECOUPLING_GRAPH_HPP
