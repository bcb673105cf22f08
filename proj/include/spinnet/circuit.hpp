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
/// \file spinnet/circuit.hpp
///
/// \brief Programs: time-ordered gate sequences and their amplitudes.
///
/// A program fixes the external spins, the total J, an input state and an
/// ordered list of steps, each either a move (j-gate) or a rotation
/// (M-gate). One step is one unit of discrete time. Execution is strictly
/// sequential; the final state is compared against an optional output
/// basis state to produce the transition amplitude.
///
/// JSON form:
///
///   {"n": 2, "j_twice": [1, 1, 1], "J_twice": 1,
///    "input":  {"tree": "((1 2) 3)", "k_twice": [0], "M_twice": 1},
///    "gates":  [{"racah": {"node": 1, "dir": "L"}},
///               {"phase": {"node": 0}},
///               {"rotate": {"alpha": 0.1, "beta": 0.2, "gamma": 0.3}}],
///    "output": {"tree": "(2 (1 3))", "k_twice": [2], "M_twice": 1}}
///
/// k_twice lists intermediate spins in post-order without the root (which
/// is J); a list that includes the root is also accepted. Instead of
/// k_twice/M_twice an input may give "amplitudes": [[re, im], ...] in
/// (labeling, M ascending) row-major order.
///

#ifndef SPINNET_CIRCUIT_HPP
#define SPINNET_CIRCUIT_HPP

#include <nlohmann/json.hpp>

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coupling_tree.hpp"
#include "gate_engine.hpp"
#include "recoupling_graph.hpp"
#include "wigner.hpp"

namespace spinnet {

struct StateDescriptor {
    CouplingTree tree;
    KLabeling k;
    HalfInt M;
};

struct ExplicitState {
    CouplingTree tree;
    Eigen::MatrixXcd amplitudes; // dimension x (2J+1)
};

using GateStep = std::variant<Move, EulerAngles>;

struct Program {
    int n = 0;
    SpinContext ctx;
    std::variant<StateDescriptor, ExplicitState> input;
    std::vector<GateStep> gates;
    std::optional<StateDescriptor> output;

    const CouplingTree& input_tree() const {
        return std::visit([](const auto& s) -> const CouplingTree& { return s.tree; }, input);
    }
};

struct StepRecord {
    std::size_t step;
    std::string tree;
    double norm;
};

struct RunResult {
    StateVector final_state;
    std::optional<std::complex<double>> amplitude;
    std::vector<StepRecord> per_step_log;
};

enum class ComputingClass { j_class, m_class, mixed };

inline std::string_view to_string(ComputingClass c) {
    switch (c) {
    case ComputingClass::j_class:
        return "J_CLASS";
    case ComputingClass::m_class:
        return "M_CLASS";
    case ComputingClass::mixed:
        return "MIXED";
    }
    return "?";
}

/// j-gates only (including the empty program), M-gates only, or both.
inline ComputingClass classify(const Program& p) {
    bool moves = false, rotations = false;
    for (const auto& g : p.gates)
        (std::holds_alternative<Move>(g) ? moves : rotations) = true;
    if (moves && rotations)
        return ComputingClass::mixed;
    return rotations ? ComputingClass::m_class : ComputingClass::j_class;
}

/// Total time in units of one elementary gate.
inline std::size_t program_length(const Program& p) { return p.gates.size(); }

namespace detail {

inline StateVector initial_state(const Program& p) {
    if (const auto* d = std::get_if<StateDescriptor>(&p.input))
        return StateVector::basis_state(d->tree, p.ctx, d->k, d->M);
    const auto& e = std::get<ExplicitState>(p.input);
    return StateVector(basis_for(e.tree, p.ctx), e.amplitudes);
}

} // namespace detail

///
/// Checks the whole program before anything runs: spins, input state, every
/// move against the tree it meets, and the output tree. Returns the final
/// tree. Errors name the offending step.
///
inline CouplingTree validate_program(const Program& p) {
    p.ctx.validate();
    if (p.n != p.ctx.n())
        throw DomainError("program: n = " + std::to_string(p.n) + " but " + std::to_string(p.ctx.j.size()) +
                          " external spins are given");
    const CouplingTree& start = p.input_tree();
    if (start.leaf_count() != p.n + 1)
        throw DomainError("program: input tree " + start.encode() + " does not have n+1 leaves");
    if (const auto* d = std::get_if<StateDescriptor>(&p.input)) {
        if (!labeling_admissible(d->tree, p.ctx, d->k))
            throw DomainError("program: input labeling is not admissible on " + d->tree.encode());
        if (!valid_projection(p.ctx.J, d->M))
            throw DomainError("program: input M is not a projection of J");
    } else {
        (void)detail::initial_state(p);
    }
    CouplingTree current = start;
    for (std::size_t s = 0; s < p.gates.size(); ++s) {
        const auto* mv = std::get_if<Move>(&p.gates[s]);
        if (!mv)
            continue;
        if (!is_legal(current, *mv))
            throw PathError("program: step " + std::to_string(s) + " (" + to_string(*mv) + ") is not legal on " +
                                current.encode(),
                            s);
        current = apply_move(current, *mv);
    }
    if (p.output) {
        if (!(p.output->tree == current))
            throw DomainError("program: output is on tree " + p.output->tree.encode() + " but the program ends on " +
                              current.encode() + "; append moves connecting the two trees");
        if (!labeling_admissible(current, p.ctx, p.output->k))
            throw DomainError("program: output labeling is not admissible on " + current.encode());
        if (!valid_projection(p.ctx.J, p.output->M))
            throw DomainError("program: output M is not a projection of J");
    }
    return current;
}

inline RunResult run_program(const Program& p) {
    validate_program(p);
    StateVector state = detail::initial_state(p);
    std::vector<StepRecord> log;
    log.push_back({0, state.basis().tree.encode(), state.norm()});
    for (std::size_t s = 0; s < p.gates.size(); ++s) {
        if (const auto* mv = std::get_if<Move>(&p.gates[s]))
            state.apply(*j_gate(state.basis().tree, *mv, p.ctx));
        else
            state.apply(rotation_gate(p.ctx, std::get<EulerAngles>(p.gates[s])));
        log.push_back({s + 1, state.basis().tree.encode(), state.norm()});
    }
    std::optional<std::complex<double>> amp;
    if (p.output)
        amp = state.amplitude(p.output->k, p.output->M);
    return RunResult{std::move(state), amp, std::move(log)};
}

/// <out | U_P | in>, computed by running the program step by step.
inline std::complex<double> amplitude(const Program& p, const StateDescriptor& out) {
    Program q = p;
    q.output = out;
    return *run_program(q).amplitude;
}

///
/// Whole-program operator in factored form: the compiled recoupling matrix
/// of the move subsequence and the ordered product of rotation blocks. The
/// two act on separate tensor factors, so U_P = recoupling (x) magnetic.
///
struct CompiledProgram {
    GateMatrix recoupling;
    Eigen::MatrixXcd magnetic;
};

inline CompiledProgram compile_program(const Program& p) {
    validate_program(p);
    std::vector<Move> moves;
    Eigen::MatrixXcd mag = detail::magnetic_identity(p.ctx);
    for (const auto& g : p.gates) {
        if (const auto* mv = std::get_if<Move>(&g))
            moves.push_back(*mv);
        else
            mag = wigner_D_matrix(p.ctx.J, std::get<EulerAngles>(g)) * mag;
    }
    return CompiledProgram{compile_path(moves, p.input_tree(), p.ctx), std::move(mag)};
}

/// Raised for malformed program documents; pointer() is a JSON pointer.
class SchemaError : public std::invalid_argument {
  public:
    SchemaError(const std::string& pointer, const std::string& msg)
        : std::invalid_argument(pointer + ": " + msg), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

  private:
    std::string pointer_;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object())
        throw SchemaError(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(ptr + "/" + key, "missing required field");
    return *it;
}

inline int int_field(const nlohmann::json& j, const std::string& key, const std::string& ptr) {
    const auto& v = field(j, key, ptr);
    if (!v.is_number_integer())
        throw SchemaError(ptr + "/" + key, "expected an integer");
    return v.get<int>();
}

inline double real_field(const nlohmann::json& j, const std::string& key, const std::string& ptr) {
    const auto& v = field(j, key, ptr);
    if (!v.is_number())
        throw SchemaError(ptr + "/" + key, "expected a number");
    return v.get<double>();
}

inline CouplingTree tree_field(const nlohmann::json& j, const std::string& ptr) {
    const auto& v = field(j, "tree", ptr);
    if (!v.is_string())
        throw SchemaError(ptr + "/tree", "expected a tree string");
    try {
        return parse_tree(v.get<std::string>());
    } catch (const ParseError& e) {
        throw SchemaError(ptr + "/tree", e.what());
    }
}

inline StateDescriptor descriptor_from_json(const nlohmann::json& j, const std::string& ptr, const SpinContext& ctx) {
    StateDescriptor d{tree_field(j, ptr), {}, {}};
    const auto& ks = field(j, "k_twice", ptr);
    if (!ks.is_array())
        throw SchemaError(ptr + "/k_twice", "expected an array of integers");
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!ks[i].is_number_integer())
            throw SchemaError(ptr + "/k_twice/" + std::to_string(i), "expected an integer");
        d.k.k.push_back(HalfInt::from_twice(ks[i].get<int>()));
    }
    const auto internal = static_cast<std::size_t>(d.tree.internal_count());
    if (d.k.k.size() + 1 == internal)
        d.k.k.push_back(ctx.J);
    else if (d.k.k.size() != internal)
        throw SchemaError(ptr + "/k_twice", "expected " + std::to_string(internal - 1) + " intermediate spins");
    d.M = HalfInt::from_twice(int_field(j, "M_twice", ptr));
    return d;
}

} // namespace detail

/// Parses the program document; SchemaError points at the offending field.
inline Program program_from_json(const nlohmann::json& j) {
    Program p;
    p.n = detail::int_field(j, "n", "");
    const auto& js = detail::field(j, "j_twice", "");
    if (!js.is_array())
        throw SchemaError("/j_twice", "expected an array of integers");
    for (std::size_t i = 0; i < js.size(); ++i) {
        if (!js[i].is_number_integer() || js[i].get<int>() < 0)
            throw SchemaError("/j_twice/" + std::to_string(i), "expected a nonnegative integer");
        p.ctx.j.push_back(HalfInt::from_twice(js[i].get<int>()));
    }
    if (static_cast<int>(p.ctx.j.size()) != p.n + 1)
        throw SchemaError("/j_twice", "expected n+1 = " + std::to_string(p.n + 1) + " entries");
    const int J = detail::int_field(j, "J_twice", "");
    if (J < 0)
        throw SchemaError("/J_twice", "expected a nonnegative integer");
    p.ctx.J = HalfInt::from_twice(J);

    const auto& in = detail::field(j, "input", "");
    if (in.is_object() && in.contains("amplitudes")) {
        ExplicitState e{detail::tree_field(in, "/input"), {}};
        const auto& amps = in["amplitudes"];
        if (!amps.is_array())
            throw SchemaError("/input/amplitudes", "expected an array of [re, im] pairs");
        const int cols = p.ctx.J.multiplicity();
        if (amps.size() % static_cast<std::size_t>(cols) != 0)
            throw SchemaError("/input/amplitudes", "length must be a multiple of 2J+1");
        e.amplitudes.resize(static_cast<Eigen::Index>(amps.size()) / cols, cols);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const auto& z = amps[i];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw SchemaError("/input/amplitudes/" + std::to_string(i), "expected [re, im]");
            e.amplitudes(static_cast<Eigen::Index>(i) / cols, static_cast<Eigen::Index>(i) % cols) =
                std::complex<double>(z[0].get<double>(), z[1].get<double>());
        }
        p.input = std::move(e);
    } else {
        p.input = detail::descriptor_from_json(in, "/input", p.ctx);
    }

    const auto& gates = detail::field(j, "gates", "");
    if (!gates.is_array())
        throw SchemaError("/gates", "expected an array");
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string ptr = "/gates/" + std::to_string(i);
        const auto& g = gates[i];
        if (!g.is_object() || g.size() != 1)
            throw SchemaError(ptr, "expected an object with exactly one of racah, phase, rotate");
        if (g.contains("racah")) {
            const auto& r = g["racah"];
            const int node = detail::int_field(r, "node", ptr + "/racah");
            const auto& dir = detail::field(r, "dir", ptr + "/racah");
            if (!dir.is_string() || (dir != "L" && dir != "R"))
                throw SchemaError(ptr + "/racah/dir", "expected \"L\" or \"R\"");
            p.gates.emplace_back(Move{dir == "L" ? MoveKind::racah_left : MoveKind::racah_right, node});
        } else if (g.contains("phase")) {
            p.gates.emplace_back(Move{MoveKind::phase_swap, detail::int_field(g["phase"], "node", ptr + "/phase")});
        } else if (g.contains("rotate")) {
            const auto& r = g["rotate"];
            const std::string rp = ptr + "/rotate";
            p.gates.emplace_back(EulerAngles(detail::real_field(r, "alpha", rp), detail::real_field(r, "beta", rp),
                                             detail::real_field(r, "gamma", rp)));
        } else {
            throw SchemaError(ptr, "unknown gate kind");
        }
    }
    if (j.contains("output") && !j["output"].is_null())
        p.output = detail::descriptor_from_json(j["output"], "/output", p.ctx);
    return p;
}

inline nlohmann::json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline nlohmann::json to_json(const RunResult& r, ComputingClass cls) {
    nlohmann::json log = nlohmann::json::array();
    for (const auto& s : r.per_step_log)
        log.push_back({{"step", s.step}, {"tree", s.tree}, {"norm", s.norm}});
    const auto& basis = r.final_state.basis();
    nlohmann::json states = nlohmann::json::array();
    for (const auto& k : basis.states) {
        nlohmann::json ks = nlohmann::json::array();
        for (HalfInt x : k.k)
            ks.push_back(x.twice());
        states.push_back(ks);
    }
    nlohmann::json amps = nlohmann::json::array();
    const auto& a = r.final_state.amplitudes();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            amps.push_back(nlohmann::json::array({a(i, c).real(), a(i, c).imag()}));
    nlohmann::json out;
    out["amplitude"] = r.amplitude ? complex_json(*r.amplitude) : nlohmann::json(nullptr);
    out["class"] = to_string(cls);
    out["steps"] = r.per_step_log.size() - 1;
    out["log"] = log;
    out["final_state"] = {{"tree", basis.tree.encode()}, {"k_twice", states}, {"amplitudes", amps}};
    return out;
}

} // namespace spinnet

#endif // SPINNET_CIRCUIT_HPP
