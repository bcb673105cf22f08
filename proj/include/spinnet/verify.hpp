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
/// \file spinnet/verify.hpp
///
/// \brief Seeded invariant suites: pentagon and orthogonality identities,
/// gate unitarity, and path independence of compiled recoupling matrices.
///
/// Each suite reports the largest residual it saw and, on failure, the
/// first offending instance as JSON so it can be replayed.
///

#ifndef SPINNET_VERIFY_HPP
#define SPINNET_VERIFY_HPP

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "coupling_tree.hpp"
#include "gate_engine.hpp"
#include "identities.hpp"
#include "recoupling_graph.hpp"

namespace spinnet {

enum class PrecisionMode { exact, floating };

struct VerifyReport {
    std::string suite;
    std::size_t checked = 0;
    double max_residual = 0.0;
    bool pass = true;
    nlohmann::json offending = nullptr; // null when pass
    nlohmann::json details = nlohmann::json::object();
};

namespace detail {

inline void record(VerifyReport& rep, bool ok, double residual, const nlohmann::json& instance) {
    ++rep.checked;
    rep.max_residual = std::max(rep.max_residual, residual);
    if (!ok && rep.pass) {
        rep.pass = false;
        rep.offending = instance;
    }
}

/// Uniform spin from the Clebsch-Gordan series of x and y, capped at max_twice.
inline HalfInt pick_coupled(std::mt19937_64& rng, HalfInt x, HalfInt y, int max_twice) {
    const int lo = std::abs(x.twice() - y.twice());
    const int hi = std::min(x.twice() + y.twice(), max_twice - ((max_twice - lo) % 2));
    if (hi < lo)
        return HalfInt::from_twice(-1);
    std::uniform_int_distribution<int> dist(0, (hi - lo) / 2);
    return HalfInt::from_twice(lo + 2 * dist(rng));
}

inline HalfInt pick_spin(std::mt19937_64& rng, int max_twice) {
    std::uniform_int_distribution<int> dist(0, max_twice);
    return HalfInt::from_twice(dist(rng));
}

inline nlohmann::json spins_json(std::initializer_list<HalfInt> xs) {
    nlohmann::json out = nlohmann::json::array();
    for (HalfInt x : xs)
        out.push_back(x.twice());
    return out;
}

} // namespace detail

/// Nine spins (a b c d e f p q r) for which both 6j symbols on the right-hand
/// side of the pentagon identity have admissible triads.
struct PentagonInstance {
    HalfInt a, b, c, d, e, f, p, q, r;
};

inline PentagonInstance random_pentagon_instance(std::mt19937_64& rng, int max_twice) {
    for (;;) {
        PentagonInstance s;
        s.p = detail::pick_spin(rng, max_twice);
        s.q = detail::pick_spin(rng, max_twice);
        s.r = detail::pick_coupled(rng, s.p, s.q, max_twice);
        s.a = detail::pick_spin(rng, max_twice);
        s.d = detail::pick_coupled(rng, s.p, s.a, max_twice);
        s.e = detail::pick_coupled(rng, s.q, s.d, max_twice);
        s.b = detail::pick_spin(rng, max_twice);
        s.c = detail::pick_coupled(rng, s.p, s.b, max_twice);
        s.f = detail::pick_coupled(rng, s.q, s.c, max_twice);
        if (s.r.twice() < 0 || s.d.twice() < 0 || s.e.twice() < 0 || s.c.twice() < 0 || s.f.twice() < 0)
            continue;
        if (admissible(s.e, s.a, s.r) && admissible(s.f, s.b, s.r))
            return s;
    }
}

inline VerifyReport verify_pentagon(std::uint64_t seed, std::size_t size, int max_twice, PrecisionMode mode,
                                    double tolerance) {
    VerifyReport rep{"pentagon"};
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < size; ++i) {
        const auto s = random_pentagon_instance(rng, max_twice);
        const auto res = check_pentagon(s.a, s.b, s.c, s.d, s.e, s.f, s.p, s.q, s.r);
        const bool ok = mode == PrecisionMode::exact ? res.exact_zero() : res.numeric <= tolerance;
        const double shown = mode == PrecisionMode::exact ? std::abs(res.exact.to_double()) : res.numeric;
        detail::record(rep, ok, shown,
                       {{"spins_twice", detail::spins_json({s.a, s.b, s.c, s.d, s.e, s.f, s.p, s.q, s.r})},
                        {"exact_residual", res.exact.str()},
                        {"numeric_residual", res.numeric}});
    }
    return rep;
}

inline VerifyReport verify_orthogonality(std::uint64_t seed, std::size_t size, int max_twice, PrecisionMode mode,
                                         double tolerance) {
    VerifyReport rep{"ortho"};
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < size;) {
        const HalfInt a = detail::pick_spin(rng, max_twice);
        const HalfInt b = detail::pick_spin(rng, max_twice);
        const HalfInt c = detail::pick_spin(rng, max_twice);
        const HalfInt d = detail::pick_spin(rng, max_twice);
        const HalfInt p = detail::pick_coupled(rng, a, d, max_twice);
        const HalfInt q = detail::pick_coupled(rng, a, d, max_twice);
        if (p.twice() < 0 || q.twice() < 0 || !admissible(c, b, p) || !admissible(c, b, q))
            continue;
        ++i;
        const auto res = check_orthogonality(a, b, c, d, p, q);
        const bool ok = mode == PrecisionMode::exact ? res.exact_zero() : res.numeric <= tolerance;
        const double shown = mode == PrecisionMode::exact ? std::abs(res.exact.to_double()) : res.numeric;
        detail::record(rep, ok, shown,
                       {{"spins_twice", detail::spins_json({a, b, c, d, p, q})},
                        {"exact_residual", res.exact.str()},
                        {"numeric_residual", res.numeric}});
    }
    return rep;
}

/// Total spins J (as twice) reachable from the given external spins.
inline std::vector<HalfInt> total_spins(const std::vector<HalfInt>& j) {
    int hi = 0;
    for (HalfInt x : j)
        hi += x.twice();
    std::vector<HalfInt> out;
    for (int t = hi % 2; t <= hi; t += 2) {
        SpinContext ctx{j, HalfInt::from_twice(t), std::nullopt};
        if (recoupling_dimension(ctx) > 0)
            out.push_back(HalfInt::from_twice(t));
    }
    return out;
}

///
/// Every j-gate on every tree with n+1 copies of one spin, for every total
/// J. Exact mode requires G^T G = G G^T = I exactly.
///
inline VerifyReport verify_unitarity(int n, int spin_twice, PrecisionMode mode, double tolerance,
                                     int cap = kDefaultTreeCap) {
    VerifyReport rep{"unitarity"};
    const std::vector<HalfInt> j(static_cast<std::size_t>(n + 1), HalfInt::from_twice(spin_twice));
    const auto trees = enumerate_trees(n, cap);
    for (HalfInt J : total_spins(j)) {
        const SpinContext ctx{j, J, std::nullopt};
        for (const auto& t : trees)
            for (const auto& [mv, target] : neighbors(t)) {
                const auto g = j_gate(t, mv, ctx);
                const Eigen::MatrixXd m = g->entries.real();
                const auto dim = m.rows();
                const double defect =
                    dim == 0 ? 0.0 : (m.transpose() * m - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
                const bool ok = mode == PrecisionMode::exact ? is_exactly_orthogonal(*g->exact) : defect <= tolerance;
                detail::record(rep, ok, defect,
                               {{"tree", t.encode()}, {"move", to_string(mv)}, {"J_twice", J.twice()}});
            }
    }
    return rep;
}

///
/// For `pairs` random vertex pairs, compiles two different paths between
/// the same endpoints (the breadth-first shortest path and a detour through
/// a random third vertex) in every J sector and compares the matrices.
///
inline VerifyReport verify_path_independence(int n, int spin_twice, std::size_t pairs, std::uint64_t seed,
                                             PrecisionMode mode, double tolerance, int cap = kDefaultTreeCap) {
    VerifyReport rep{"pathfree"};
    const std::vector<HalfInt> j(static_cast<std::size_t>(n + 1), HalfInt::from_twice(spin_twice));
    const auto g = build_graph(n, cap);
    const auto sectors = total_spins(j);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
    std::size_t pair_count = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const int s = pick(rng), d = pick(rng);
        std::vector<Move> direct = shortest_path(g, g.vertex(s), g.vertex(d));
        std::vector<Move> detour;
        for (int attempt = 0; attempt < 16; ++attempt) {
            const int mid = pick(rng);
            detour = shortest_path(g, g.vertex(s), g.vertex(mid));
            const auto tail = shortest_path(g, g.vertex(mid), g.vertex(d));
            detour.insert(detour.end(), tail.begin(), tail.end());
            if (detour != direct)
                break;
        }
        if (detour == direct) {
            // every detour collapsed onto the direct path; go out and back along one edge
            const auto& e = g.edges()[static_cast<std::size_t>(g.out_edges(s).front())];
            detour.insert(detour.begin(), {e.move, inverse(e.move)});
        }
        ++pair_count;
        for (HalfInt J : sectors) {
            const SpinContext ctx{j, J, std::nullopt};
            const auto m1 = compile_path(direct, g.vertex(s), ctx);
            const auto m2 = compile_path(detour, g.vertex(s), ctx);
            const double diff = m1.entries.size() == 0 ? 0.0 : (m1.entries - m2.entries).cwiseAbs().maxCoeff();
            const bool ok = mode == PrecisionMode::exact ? (*m1.exact == *m2.exact) : diff <= tolerance;
            nlohmann::json p1 = nlohmann::json::array(), p2 = nlohmann::json::array();
            for (const auto& m : direct)
                p1.push_back(to_string(m));
            for (const auto& m : detour)
                p2.push_back(to_string(m));
            detail::record(rep, ok, diff,
                           {{"source", g.encoding(s)},
                            {"target", g.encoding(d)},
                            {"J_twice", J.twice()},
                            {"path_a", p1},
                            {"path_b", p2}});
        }
    }
    rep.details["path_pairs"] = pair_count;
    return rep;
}

inline nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json out{{"suite", r.suite},
                       {"checked", r.checked},
                       {"max_residual", r.max_residual},
                       {"pass", r.pass},
                       {"details", r.details}};
    if (!r.pass)
        out["offending"] = r.offending;
    return out;
}

} // namespace spinnet

#endif // SPINNET_VERIFY_HPP
