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
/// \file spinnet/gate_engine.hpp
///
/// \brief Elementary gates as matrices on recoupling bases.
///
/// A j-gate attached to a move t -> t' is the change of basis
///   G[r][i] = <t', state r | t, state i>,
/// rows indexed by the target basis, columns by the source basis. Applied to
/// amplitudes it re-expresses the same vector in the new coupling scheme, so
/// compiling any path between two trees yields the same recoupling matrix.
///
/// Rotation gates act on the magnetic index alone through D^J.
///

#ifndef SPINNET_GATE_ENGINE_HPP
#define SPINNET_GATE_ENGINE_HPP

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coupling_tree.hpp"
#include "exact.hpp"
#include "memo.hpp"
#include "recoupling_graph.hpp"
#include "wigner.hpp"

namespace spinnet {

/// Dense matrix over SurdSum.
class ExactMatrix {
  public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = SurdSum(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    SurdSum& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const SurdSum& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_)
            throw DomainError("ExactMatrix: dimension mismatch in product");
        ExactMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const SurdSum& x = a(r, k);
                if (x.is_zero())
                    continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    if (!b(k, c).is_zero())
                        out(r, c) += x * b(k, c);
            }
        return out;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Eigen::MatrixXd to_double() const {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c).to_double();
        return m;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<SurdSum> data_;
};

/// M^T M == I exactly.
inline bool is_exactly_orthogonal(const ExactMatrix& m) {
    return m.rows() == m.cols() && m.transpose() * m == ExactMatrix::identity(m.rows()) &&
           m * m.transpose() == ExactMatrix::identity(m.rows());
}

enum class GateKind { racah, phase, rotation, compiled };

///
/// Gate on the product of a recoupling space and the (2J+1)-dim magnetic
/// space. For j-gates `exact` holds the recoupling block and
/// `magnetic_action` is the identity. Rotation gates carry no bases (they
/// act on any tree) and an empty `entries`, read as the identity.
///
struct GateMatrix {
    GateKind kind = GateKind::compiled;
    std::shared_ptr<const RecouplingBasis> source;
    std::shared_ptr<const RecouplingBasis> target;
    std::optional<ExactMatrix> exact;
    Eigen::MatrixXcd entries;
    Eigen::MatrixXcd magnetic_action;

    bool acts_on_any_basis() const { return !source; }
};

namespace detail {

inline std::shared_ptr<const RecouplingBasis> basis_for(const CouplingTree& t, const SpinContext& ctx) {
    static ConcurrentMemo<std::string, std::shared_ptr<const RecouplingBasis>> cache;
    SpinContext bare = ctx;
    bare.M.reset();
    return cache.get_or_compute(t.encode() + "|" + bare.key(), [&] {
        return std::make_shared<const RecouplingBasis>(enumerate_klabelings(t, bare));
    });
}

/// Carries labels from one tree to another by matching leaf sets; the node
/// with leaf set `fresh_set` (absent from `from`) receives `fresh_value`.
inline KLabeling transfer_labels(const CouplingTree& from, const KLabeling& lab, const CouplingTree& to,
                                 std::uint64_t fresh_set, HalfInt fresh_value) {
    KLabeling out;
    out.k.resize(static_cast<std::size_t>(to.internal_count()));
    for (int k = 0; k < to.internal_count(); ++k) {
        const std::uint64_t set = to.node(to.internal_node(k)).leaf_set;
        if (set == fresh_set) {
            out.k[static_cast<std::size_t>(k)] = fresh_value;
            continue;
        }
        const auto src = from.find_internal(set);
        if (!src)
            throw DomainError("transfer_labels: no matching node");
        out.k[static_cast<std::size_t>(k)] = lab.k[static_cast<std::size_t>(*src)];
    }
    return out;
}

inline Eigen::MatrixXcd complexify(const Eigen::MatrixXd& m) { return m.cast<std::complex<double>>(); }

inline Eigen::MatrixXcd magnetic_identity(const SpinContext& ctx) {
    const auto dim = static_cast<Eigen::Index>(ctx.J.multiplicity());
    return Eigen::MatrixXcd::Identity(dim, dim);
}

inline ConcurrentMemo<std::string, std::shared_ptr<const GateMatrix>>& gate_cache() {
    static ConcurrentMemo<std::string, std::shared_ptr<const GateMatrix>> cache;
    return cache;
}

} // namespace detail

///
/// <((a b)_d c)_f | (a (b c)_e)_f> = (-1)^(a+b+c+f) sqrt((2d+1)(2e+1)) {a b d; c f e}.
/// The only place the Racah-transform phase convention is fixed.
///
inline ExactReal racah_coefficient(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    const ExactReal six = sixj(a, b, d, c, f, e);
    if (six.is_zero())
        return {};
    const ExactReal root = ExactReal::sqrt(Rational(d.multiplicity() * e.multiplicity()));
    return ExactReal(Rational(parity_sign(a + b + c + f))) * root * six;
}

/// (-1)^(a+b-c): sign picked up when the two spins coupled to c are swapped.
inline int swap_phase(HalfInt a, HalfInt b, HalfInt c) { return parity_sign(a + b - c); }

namespace detail {

inline GateMatrix finish_j_gate(GateKind kind, std::shared_ptr<const RecouplingBasis> src,
                                std::shared_ptr<const RecouplingBasis> dst, ExactMatrix exact,
                                const SpinContext& ctx) {
    GateMatrix g;
    g.kind = kind;
    g.source = std::move(src);
    g.target = std::move(dst);
    g.entries = complexify(exact.to_double());
    g.exact = std::move(exact);
    g.magnetic_action = magnetic_identity(ctx);
    return g;
}

inline std::string gate_key(const CouplingTree& t, const Move& mv, const SpinContext& ctx) {
    SpinContext bare = ctx;
    bare.M.reset();
    return t.encode() + "|" + to_string(mv) + "|" + bare.key();
}

} // namespace detail

///
/// Racah transform for a racah_left or racah_right move on t.
///
inline std::shared_ptr<const GateMatrix> racah_gate(const CouplingTree& t, const Move& mv, const SpinContext& ctx) {
    if (!is_racah(mv))
        throw DomainError("racah_gate: move " + to_string(mv) + " is not a Racah move");
    if (!is_legal(t, mv))
        throw DomainError("racah_gate: move " + to_string(mv) + " is not legal on " + t.encode());
    return detail::gate_cache().get_or_compute(detail::gate_key(t, mv, ctx), [&] {
        const CouplingTree t2 = apply_move(t, mv);
        auto src = detail::basis_for(t, ctx);
        auto dst = detail::basis_for(t2, ctx);
        ExactMatrix m(dst->dimension(), src->dimension());

        const int v = t.internal_node(mv.node);
        const auto& vn = t.node(v);
        // Positions of the a, b, c subtrees and of the node that disappears.
        int pa, pb, pc, gone;
        if (mv.kind == MoveKind::racah_left) {
            gone = vn.left;
            pa = t.node(gone).left;
            pb = t.node(gone).right;
            pc = vn.right;
        } else {
            gone = vn.right;
            pa = vn.left;
            pb = t.node(gone).left;
            pc = t.node(gone).right;
        }
        const std::uint64_t fresh_set = mv.kind == MoveKind::racah_left
                                            ? (t.node(pb).leaf_set | t.node(pc).leaf_set)
                                            : (t.node(pa).leaf_set | t.node(pb).leaf_set);

        for (std::size_t i = 0; i < src->dimension(); ++i) {
            const KLabeling& lab = src->states[i];
            const HalfInt a = node_spin(t, ctx, lab, pa);
            const HalfInt b = node_spin(t, ctx, lab, pb);
            const HalfInt c = node_spin(t, ctx, lab, pc);
            const HalfInt old = node_spin(t, ctx, lab, gone);
            const HalfInt f = node_spin(t, ctx, lab, v);
            // the new intermediate couples (b c) for racah_left, (a b) for racah_right
            const HalfInt x = mv.kind == MoveKind::racah_left ? b : a;
            const HalfInt y = mv.kind == MoveKind::racah_left ? c : b;
            for (int tw = std::abs(x.twice() - y.twice()); tw <= x.twice() + y.twice(); tw += 2) {
                const HalfInt fresh = HalfInt::from_twice(tw);
                const auto r = dst->index_of(detail::transfer_labels(t, lab, t2, fresh_set, fresh));
                if (!r)
                    continue;
                const HalfInt d = mv.kind == MoveKind::racah_left ? old : fresh;
                const HalfInt e = mv.kind == MoveKind::racah_left ? fresh : old;
                m(*r, i) = SurdSum(racah_coefficient(a, b, c, d, e, f));
            }
        }
        return std::make_shared<const GateMatrix>(
            detail::finish_j_gate(GateKind::racah, std::move(src), std::move(dst), std::move(m), ctx));
    });
}

///
/// Phase transform for a phase_swap move: a signed relabeling between the
/// bases of t and of t with the two children swapped.
///
inline std::shared_ptr<const GateMatrix> phase_gate(const CouplingTree& t, const Move& mv, const SpinContext& ctx) {
    if (mv.kind != MoveKind::phase_swap)
        throw DomainError("phase_gate: move " + to_string(mv) + " is not a phase swap");
    if (!is_legal(t, mv))
        throw DomainError("phase_gate: move " + to_string(mv) + " is not legal on " + t.encode());
    return detail::gate_cache().get_or_compute(detail::gate_key(t, mv, ctx), [&] {
        const CouplingTree t2 = apply_move(t, mv);
        auto src = detail::basis_for(t, ctx);
        auto dst = detail::basis_for(t2, ctx);
        ExactMatrix m(dst->dimension(), src->dimension());
        const int v = t.internal_node(mv.node);
        const auto& vn = t.node(v);
        for (std::size_t i = 0; i < src->dimension(); ++i) {
            const KLabeling& lab = src->states[i];
            const auto r = dst->index_of(detail::transfer_labels(t, lab, t2, 0, HalfInt()));
            if (!r)
                throw DomainError("phase_gate: relabeled state missing from target basis");
            const int sign = swap_phase(node_spin(t, ctx, lab, vn.left), node_spin(t, ctx, lab, vn.right),
                                        node_spin(t, ctx, lab, v));
            m(*r, i) = SurdSum(sign);
        }
        return std::make_shared<const GateMatrix>(
            detail::finish_j_gate(GateKind::phase, std::move(src), std::move(dst), std::move(m), ctx));
    });
}

/// racah_gate or phase_gate according to the move kind.
inline std::shared_ptr<const GateMatrix> j_gate(const CouplingTree& t, const Move& mv, const SpinContext& ctx) {
    return is_racah(mv) ? racah_gate(t, mv, ctx) : phase_gate(t, mv, ctx);
}

/// W-rotation: D^J(angles) on the magnetic index, identity on the tree.
inline GateMatrix rotation_gate(const SpinContext& ctx, const EulerAngles& angles) {
    GateMatrix g;
    g.kind = GateKind::rotation;
    g.magnetic_action = wigner_D_matrix(ctx.J, angles);
    return g;
}

/// Rotation gate bound to the basis of a particular tree.
inline GateMatrix rotation_gate(const CouplingTree& t, const SpinContext& ctx, const EulerAngles& angles) {
    GateMatrix g = rotation_gate(ctx, angles);
    g.source = g.target = detail::basis_for(t, ctx);
    const auto dim = static_cast<Eigen::Index>(g.source->dimension());
    g.entries = Eigen::MatrixXcd::Identity(dim, dim);
    return g;
}

/// Thrown by compile_path; carries the index of the failing step.
class PathError : public DomainError {
  public:
    PathError(const std::string& msg, std::size_t step) : DomainError(msg), step_(step) {}
    std::size_t step() const { return step_; }

  private:
    std::size_t step_;
};

///
/// Ordered product G_L ... G_1 of the j-gates along a path from `start`. For
/// a pure j-gate path this is the 3nj recoupling matrix between the bases of
/// the two endpoint trees.
///
inline GateMatrix compile_path(const std::vector<Move>& path, const CouplingTree& start, const SpinContext& ctx) {
    auto src = detail::basis_for(start, ctx);
    ExactMatrix acc = ExactMatrix::identity(src->dimension());
    CouplingTree current = start;
    for (std::size_t s = 0; s < path.size(); ++s) {
        if (!is_legal(current, path[s]))
            throw PathError("compile_path: step " + std::to_string(s) + " (" + to_string(path[s]) +
                                ") is not legal on " + current.encode(),
                            s);
        const auto g = j_gate(current, path[s], ctx);
        acc = *g->exact * acc;
        current = apply_move(current, path[s]);
    }
    return detail::finish_j_gate(GateKind::compiled, std::move(src), detail::basis_for(current, ctx), std::move(acc),
                                 ctx);
}

///
/// Amplitudes over (labeling index, magnetic index); column c holds
/// M = -J + c.
///
class StateVector {
  public:
    StateVector(std::shared_ptr<const RecouplingBasis> basis, Eigen::MatrixXcd amplitudes)
        : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
        if (amps_.rows() != static_cast<Eigen::Index>(basis_->dimension()) ||
            amps_.cols() != static_cast<Eigen::Index>(basis_->ctx.J.multiplicity()))
            throw DomainError("StateVector: amplitude shape does not match basis");
    }

    /// |tree; labeling; J M>.
    static StateVector basis_state(const CouplingTree& t, const SpinContext& ctx, const KLabeling& lab, HalfInt M) {
        auto basis = detail::basis_for(t, ctx);
        const auto idx = basis->index_of(lab);
        if (!idx)
            throw DomainError("labeling is not admissible on " + t.encode());
        if (!valid_projection(ctx.J, M))
            throw DomainError("M = " + M.str() + " is not a projection of J = " + ctx.J.str());
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis->dimension()), ctx.J.multiplicity());
        a(static_cast<Eigen::Index>(*idx), magnetic_index(ctx.J, M)) = 1.0;
        return StateVector(std::move(basis), std::move(a));
    }

    static Eigen::Index magnetic_index(HalfInt J, HalfInt M) { return (M.twice() + J.twice()) / 2; }

    const RecouplingBasis& basis() const { return *basis_; }
    std::shared_ptr<const RecouplingBasis> basis_ptr() const { return basis_; }
    const Eigen::MatrixXcd& amplitudes() const { return amps_; }
    double norm() const { return amps_.norm(); }

    std::complex<double> amplitude(const KLabeling& lab, HalfInt M) const {
        const auto idx = basis_->index_of(lab);
        if (!idx)
            throw DomainError("labeling is not in the current basis");
        if (!valid_projection(basis_->ctx.J, M))
            throw DomainError("M = " + M.str() + " is not a projection of J");
        return amps_(static_cast<Eigen::Index>(*idx), magnetic_index(basis_->ctx.J, M));
    }

    /// In-place application; the gate's source tree must be the current tree.
    void apply(const GateMatrix& g) {
        if (!g.acts_on_any_basis() && !(g.source->tree == basis_->tree))
            throw DomainError("gate expects tree " + g.source->tree.encode() + " but state is on " +
                              basis_->tree.encode());
        if (g.magnetic_action.rows() != amps_.cols())
            throw DomainError("gate acts on a different J sector");
        Eigen::MatrixXcd next = amps_ * g.magnetic_action.transpose();
        if (g.entries.size() != 0)
            next = g.entries * next;
        amps_ = std::move(next);
        if (!g.acts_on_any_basis())
            basis_ = g.target;
    }

  private:
    std::shared_ptr<const RecouplingBasis> basis_;
    Eigen::MatrixXcd amps_;
};

} // namespace spinnet

#endif // SPINNET_GATE_ENGINE_HPP
