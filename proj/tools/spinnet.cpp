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

// spinnet: command-line front end.
//
//   spinnet symbol {cgc,sixj,smalld,bigD,pr6j} ARGS...
//   spinnet graph N [--format dot|json] [--out FILE]
//   spinnet verify {pentagon,ortho,unitarity,pathfree} [--seed S] [--size K] [--n N]
//   spinnet run PROGRAM.json
//
// Exit codes: 0 ok, 1 domain/resource/verification failure, 2 usage or schema error.

#include <CLI11.hpp>

#include <spinnet/spinnet.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace spinnet;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Config {
    std::string mode = "exact";
    double tolerance = 1e-12;
    std::string format = "text";
    int ncap = -1;
    bool allow_large = false;
};

std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a real number: '" + s + "'");
    }
    if (used != s.size())
        throw UsageError("not a real number: '" + s + "'");
    return v;
}

HalfInt parse_spin(const std::string& s) {
    try {
        return parse_half_int(s);
    } catch (const ParseError& e) {
        throw UsageError("bad quantum number '" + s + "': " + e.what());
    }
}

std::vector<HalfInt> parse_spins(const std::vector<std::string>& args, std::size_t from, std::size_t count) {
    std::vector<HalfInt> out;
    for (std::size_t i = from; i < from + count; ++i)
        out.push_back(parse_spin(args[i]));
    return out;
}

PrecisionMode precision(const Config& cfg) {
    if (cfg.mode == "exact")
        return PrecisionMode::exact;
    return PrecisionMode::floating;
}

// The effective cap: --ncap beats SPINNET_NCAP; raising it needs --allow-large.
int tree_cap(const Config& cfg) {
    int cap = kDefaultTreeCap;
    if (const char* env = std::getenv("SPINNET_NCAP")) {
        try {
            cap = std::stoi(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("SPINNET_NCAP is not an integer: '") + env + "'");
        }
    }
    if (cfg.ncap >= 0)
        cap = cfg.ncap;
    if (cap > kDefaultTreeCap && !cfg.allow_large)
        throw UsageError("raising the enumeration cap above " + std::to_string(kDefaultTreeCap) +
                         " requires --allow-large");
    return cap;
}

int cmd_symbol(const std::string& kind, const std::vector<std::string>& args, const Config& cfg) {
    auto need = [&](std::size_t k, const char* usage) {
        if (args.size() != k)
            throw UsageError(std::string("symbol ") + kind + " expects " + usage);
    };
    nlohmann::json out;
    if (kind == "cgc" || kind == "sixj") {
        need(6, kind == "cgc" ? "j1 m1 j2 m2 J M" : "a b c d e f");
        const auto s = parse_spins(args, 0, 6);
        const ExactReal v = kind == "cgc" ? cgc(s[0], s[1], s[2], s[3], s[4], s[5])
                                          : sixj(s[0], s[1], s[2], s[3], s[4], s[5]);
        out = {{"exact", v.str()}, {"value", v.to_double()}};
        if (cfg.format != "json") {
            std::cout << v.str() << "\n" << fmt_real(v.to_double()) << "\n";
            return 0;
        }
    } else if (kind == "smalld") {
        need(4, "j m mp beta");
        const auto s = parse_spins(args, 0, 3);
        const double v = wigner_small_d(s[0], s[1], s[2], parse_real(args[3]));
        out = {{"value", v}};
        if (cfg.format != "json") {
            std::cout << fmt_real(v) << "\n";
            return 0;
        }
    } else if (kind == "bigD") {
        need(6, "j m mp alpha beta gamma");
        const auto s = parse_spins(args, 0, 3);
        const EulerAngles ang(parse_real(args[3]), parse_real(args[4]), parse_real(args[5]));
        const auto v = wigner_D(s[0], s[1], s[2], ang);
        out = {{"re", v.real()}, {"im", v.imag()}};
        if (cfg.format != "json") {
            std::cout << fmt_real(v.real()) << " " << fmt_real(v.imag()) << "\n";
            return 0;
        }
    } else if (kind == "pr6j") {
        need(6, "a b c d e f");
        const auto s = parse_spins(args, 0, 6);
        const auto est = sixj_ponzano_regge(s[0], s[1], s[2], s[3], s[4], s[5]);
        const ExactReal exact = sixj(s[0], s[1], s[2], s[3], s[4], s[5]);
        out = {{"approx", est.approx},
               {"regime", to_string(est.regime)},
               {"volume", est.volume},
               {"exact", exact.to_double()}};
        if (cfg.format != "json") {
            std::cout << fmt_real(est.approx) << "\n"
                      << "regime: " << to_string(est.regime) << "\n"
                      << "volume: " << fmt_real(est.volume) << "\n"
                      << "exact: " << fmt_real(exact.to_double()) << "\n";
            return 0;
        }
    } else {
        throw UsageError("unknown symbol kind '" + kind + "' (cgc, sixj, smalld, bigD, pr6j)");
    }
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_graph(int n, const std::string& format, const std::string& out_path, const Config& cfg) {
    GraphFormat fmt;
    try {
        fmt = graph_format_from_string(format);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const int cap = tree_cap(cfg);
    if (n < 1)
        throw UsageError("graph: n must be at least 1");
    const RecouplingGraph g = build_graph(n, cap);
    const std::string text = export_graph(g, fmt);
    std::ostringstream counts;
    counts << "vertices: " << g.vertex_count() << "\n"
           << "edges: " << g.undirected_edge_count() << "\n";
    if (out_path.empty()) {
        std::cout << text;
        std::cerr << counts.str();
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
        std::cerr << "spinnet: cannot write " << out_path << "\n";
        return kExitFailure;
    }
    std::cout << counts.str();
    return 0;
}

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = 1;
    std::size_t size = 100;
    int n = 2;
    int spin_twice = 1;
    int max_twice = 20;
};

int cmd_verify(const VerifyArgs& a, const Config& cfg) {
    const PrecisionMode mode = precision(cfg);
    VerifyReport rep;
    if (a.suite == "pentagon")
        rep = verify_pentagon(a.seed, a.size, a.max_twice, mode, cfg.tolerance);
    else if (a.suite == "ortho")
        rep = verify_orthogonality(a.seed, a.size, a.max_twice, mode, cfg.tolerance);
    else if (a.suite == "unitarity")
        rep = verify_unitarity(a.n, a.spin_twice, mode, cfg.tolerance, tree_cap(cfg));
    else if (a.suite == "pathfree")
        rep = verify_path_independence(a.n, a.spin_twice, a.size, a.seed, mode, cfg.tolerance, tree_cap(cfg));
    else
        throw UsageError("unknown suite '" + a.suite + "' (pentagon, ortho, unitarity, pathfree)");

    if (cfg.format == "json") {
        std::cout << to_json(rep).dump(2) << "\n";
    } else {
        std::cout << "suite: " << rep.suite << "\n"
                  << "mode: " << cfg.mode << "\n"
                  << "checked: " << rep.checked << "\n";
        if (rep.details.contains("path_pairs"))
            std::cout << "path pairs: " << rep.details["path_pairs"].get<std::size_t>() << "\n";
        std::cout << "max residual: " << fmt_real(rep.max_residual) << "\n"
                  << "result: " << (rep.pass ? "pass" : "FAIL") << "\n";
        if (!rep.pass)
            std::cout << "offending: " << rep.offending.dump() << "\n";
    }
    return rep.pass ? 0 : kExitFailure;
}

int cmd_run(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "spinnet: cannot read " << path << "\n";
        return kExitFailure;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "spinnet: schema error: (document root): " << e.what() << "\n";
        return kExitUsage;
    }
    Program p;
    try {
        p = program_from_json(doc);
    } catch (const SchemaError& e) {
        std::cerr << "spinnet: schema error: " << e.what() << "\n";
        return kExitUsage;
    }
    const RunResult r = run_program(p);
    std::cout << to_json(r, classify(p)).dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinnet: spin network recoupling engine"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--mode", cfg.mode, "Precision mode")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tolerance", cfg.tolerance, "Residual tolerance for float mode")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "Output format (text, json, dot)");
    app.add_option("--ncap", cfg.ncap, "Tree enumeration cap (overrides SPINNET_NCAP)");
    app.add_flag("--allow-large", cfg.allow_large, "Acknowledge raising the enumeration cap");

    std::string kind;
    std::vector<std::string> sym_args;
    auto* symbol = app.add_subcommand("symbol", "Evaluate cgc, sixj, smalld, bigD or pr6j");
    symbol->add_option("kind", kind)->required();
    symbol->add_option("args", sym_args, "Spins (3/2, 2 or twice=3) and angles in radians");

    int graph_n = 0;
    std::string out_path;
    auto* graph = app.add_subcommand("graph", "Build and export the move graph on n+1 leaves");
    graph->add_option("n", graph_n)->required();
    graph->add_option("--out", out_path, "Write the export here instead of stdout");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a seeded invariant suite");
    verify->add_option("suite", va.suite)->required();
    verify->add_option("--seed", va.seed);
    verify->add_option("--size", va.size, "Instances (pentagon, ortho) or vertex pairs (pathfree)");
    verify->add_option("--n", va.n, "Tree size for unitarity and pathfree")->check(CLI::PositiveNumber);
    verify->add_option("--spin-twice", va.spin_twice, "External spin, twice-valued")->check(CLI::NonNegativeNumber);
    verify->add_option("--max-twice", va.max_twice, "Largest twice-spin drawn")->check(CLI::NonNegativeNumber);

    std::string program_path;
    auto* run = app.add_subcommand("run", "Execute a program document");
    run->add_option("program", program_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*symbol)
            return cmd_symbol(kind, sym_args, cfg);
        const std::string fmt = cfg.format == "text" ? (graph->parsed() ? "dot" : "text") : cfg.format;
        if (*graph)
            return cmd_graph(graph_n, fmt, out_path, cfg);
        if (*verify)
            return cmd_verify(va, cfg);
        if (*run)
            return cmd_run(program_path);
    } catch (const UsageError& e) {
        std::cerr << "spinnet: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "spinnet: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::domain_error& e) {
        std::cerr << "spinnet: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
