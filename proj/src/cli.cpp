#include "qcsim/cli.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcsim/bv.hpp"
#include "qcsim/circuit.hpp"
#include "qcsim/gates.hpp"
#include "qcsim/measurement.hpp"
#include "qcsim/render.hpp"
#include "qcsim/rewrite.hpp"
#include "qcsim/state.hpp"

namespace qcsim {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t parse_bits(const std::string& s, std::size_t want) {
    if (s.size() != want)
        throw std::invalid_argument("malformed bitstring \"" + s + "\": expected " +
                                    std::to_string(want) + " bits");
    std::uint64_t v = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("malformed bitstring \"" + s +
                                        "\": only 0/1 digits allowed");
        v = (v << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return v;
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open circuit file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

Circuit unitary_prefix_of(const Circuit& c) {
    Circuit out;
    out.width = c.width;
    out.ops.assign(c.ops.begin(),
                   c.ops.begin() + static_cast<std::ptrdiff_t>(c.unitary_prefix_length()));
    return out;
}

json record_to_json(const MeasurementRecord& r) {
    json j;
    j["outcome"] = bitstring_of(r.outcome, r.bit_count);
    j["probability"] = r.probability_at_draw;
    return j;
}

json trace_to_json(const std::vector<RewriteStep>& trace) {
    json arr = json::array();
    for (const RewriteStep& s : trace) {
        json j;
        j["rule"] = s.rule;
        j["position"] = s.position;
        j["before_len"] = s.before_len;
        j["after_len"] = s.after_len;
        arr.push_back(std::move(j));
    }
    return arr;
}

json matrix_to_json(const GateMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_matrix(std::ostream& out, const GateMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << " ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Amplitude v = m(i, j);
            out << " " << fmt_double(v.real());
            if (v.imag() != 0.0) out << (v.imag() > 0 ? "+" : "") << fmt_double(v.imag()) << "i";
        }
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// verify: named identity certificates

struct Identity {
    std::string name;
    std::string description;
    std::vector<std::string> aliases;
    bool expect_pass = true;
    // lhs/rhs matrix pairs checked for plain entrywise equality.
    std::function<std::vector<std::pair<GateMatrix, GateMatrix>>()> sides;
};

const std::vector<Identity>& identities() {
    static const std::vector<Identity> table = [] {
        std::vector<Identity> t;
        const GateMatrix i2 = GateMatrix::Identity(2, 2);
        t.push_back({"hh", "H^2 = 1", {}, true, [i2] {
                         const GateMatrix h = base_matrix(Gate::Kind::H);
                         return std::vector{std::pair{GateMatrix(h * h), i2}};
                     }});
        t.push_back({"hxh_z", "HXH = Z", {"hxh"}, true, [] {
                         const GateMatrix h = base_matrix(Gate::Kind::H);
                         const GateMatrix x = base_matrix(Gate::Kind::X);
                         const GateMatrix z = base_matrix(Gate::Kind::Z);
                         return std::vector{std::pair{GateMatrix(h * x * h), z}};
                     }});
        t.push_back({"hzh_x", "HZH = X", {"hzh"}, true, [] {
                         const GateMatrix h = base_matrix(Gate::Kind::H);
                         const GateMatrix x = base_matrix(Gate::Kind::X);
                         const GateMatrix z = base_matrix(Gate::Kind::Z);
                         return std::vector{std::pair{GateMatrix(h * z * h), x}};
                     }});
        t.push_back({"cnot_reversal",
                     "Hadamard conjugation swaps CNOT control and target",
                     {"fig4"},
                     true,
                     [] {
                         const GateMatrix hh = matrix_of(hadamard_all(2), 2);
                         const GateMatrix c10 = matrix_of(Gate::cnot(1, 0), 2);
                         const GateMatrix c01 = matrix_of(Gate::cnot(0, 1), 2);
                         return std::vector{std::pair{GateMatrix(hh * c10 * hh), c01},
                                            std::pair{GateMatrix(hh * c01 * hh), c10}};
                     }});
        t.push_back({"cz_symmetry", "CZ ignores which wire is the control", {}, true, [] {
                         return std::vector{std::pair{matrix_of(Gate::cz(1, 0), 2),
                                                      matrix_of(Gate::cz(0, 1), 2)}};
                     }});
        t.push_back({"swap_reversal",
                     "SWAP conjugation swaps CNOT control and target",
                     {"fig7"},
                     true,
                     [] {
                         const GateMatrix sw = matrix_of(Gate::swap(0, 1), 2);
                         const GateMatrix c10 = matrix_of(Gate::cnot(1, 0), 2);
                         const GateMatrix c01 = matrix_of(Gate::cnot(0, 1), 2);
                         return std::vector{std::pair{GateMatrix(sw * c10 * sw), c01}};
                     }});
        t.push_back({"cnot_via_cz", "CNOT = (1 x H) CZ (1 x H)", {}, true, [] {
                         const GateMatrix ht = matrix_of(Gate::h(0), 2);
                         const GateMatrix cz = matrix_of(Gate::cz(1, 0), 2);
                         const GateMatrix c10 = matrix_of(Gate::cnot(1, 0), 2);
                         return std::vector{std::pair{GateMatrix(ht * cz * ht), c10}};
                     }});
        t.push_back({"swap_decomposition",
                     "SWAP = (1 + ZZ + XX - YY)/2 with Y = XZ",
                     {"exchg"},
                     true,
                     [] {
                         return std::vector{std::pair{swap_via_paulis(),
                                                      matrix_of(Gate::swap(0, 1), 2)}};
                     }});
        t.push_back({"swap_decomposition_hermitian",
                     "SWAP = (1 + XX + YY + ZZ)/2 with hermitian Y = iXZ",
                     {},
                     true,
                     [] {
                         const GateMatrix one = GateMatrix::Identity(4, 4);
                         const GateMatrix x = base_matrix(Gate::Kind::X);
                         const GateMatrix z = base_matrix(Gate::Kind::Z);
                         const GateMatrix yh = base_matrix(Gate::Kind::Yh);
                         GateMatrix s = 0.5 * (one + kron(x, x) + kron(yh, yh) + kron(z, z));
                         return std::vector{std::pair{s, matrix_of(Gate::swap(0, 1), 2)}};
                     }});
        t.push_back({"swap_projector_form",
                     "SWAP = P+ + (XX) P-",
                     {},
                     true,
                     [] {
                         auto [pp, pm] = pauli_projectors();
                         const GateMatrix x = base_matrix(Gate::Kind::X);
                         GateMatrix s = pp + kron(x, x) * pm;
                         return std::vector{std::pair{s, matrix_of(Gate::swap(0, 1), 2)}};
                     }});
        t.push_back({"x_vs_z", "negative control: X = Z is false", {}, false, [] {
                         return std::vector{std::pair{base_matrix(Gate::Kind::X),
                                                      base_matrix(Gate::Kind::Z)}};
                     }});
        return t;
    }();
    return table;
}

const Identity* find_identity(const std::string& name) {
    for (const Identity& id : identities()) {
        if (id.name == name) return &id;
        for (const std::string& a : id.aliases)
            if (a == name) return &id;
    }
    return nullptr;
}

double identity_deviation(const Identity& id) {
    double dev = 0.0;
    for (const auto& [lhs, rhs] : id.sides())
        dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
    return dev;
}

// ---------------------------------------------------------------------------
// Subcommands

struct BvArgs {
    int n = 0;
    std::string a;
    std::string mode = "quantum";
    std::uint64_t seed = 0;
    bool as_json = false;
};

int cmd_bv(const BvArgs& args, std::ostream& out) {
    const std::uint64_t a = parse_bits(args.a, static_cast<std::size_t>(args.n));

    if (args.mode == "quantum" || args.mode == "classical") {
        BvOracle oracle(args.n, a);
        RandomSource rng(args.seed);
        const BvResult r = args.mode == "quantum" ? solve_quantum(oracle, rng)
                                                  : solve_classical(oracle);
        if (args.as_json) {
            json j;
            j["mode"] = args.mode;
            j["n"] = args.n;
            j["a_found"] = bitstring_of(r.a_found, args.n);
            j["queries"] = r.queries_used;
            if (args.mode == "quantum") j["amplitude"] = r.final_amplitude;
            j["seed"] = args.seed;
            out << j.dump() << "\n";
        } else {
            out << "mode: " << args.mode << "\n"
                << "a_found: " << bitstring_of(r.a_found, args.n) << "\n"
                << "queries: " << r.queries_used << "\n";
            if (args.mode == "quantum")
                out << "amplitude: " << fmt_double(r.final_amplitude) << "\n";
            out << "seed: " << args.seed << "\n";
        }
        return kExitOk;
    }

    // rewrite mode: derive the reversed form and certify it.
    const Circuit original = bv_circuit_with_hidden_string(args.n, a);
    auto [rewritten, trace] = bv_simplify(original);

    std::size_t conjugations = 0;
    for (const RewriteStep& s : trace)
        if (s.rule == "conjugate_cnot") ++conjugations;

    bool certified = false;
    double deviation = 0.0;
    const bool can_certify = original.width <= kMaxEquivalenceWidth;
    if (can_certify) {
        deviation = circuit_deviation(unitary_prefix_of(original),
                                      unitary_prefix_of(rewritten));
        certified = deviation <= kPhaseTolerance;
    }

    RandomSource rng(args.seed);
    SimulationResult sim =
        simulate(rewritten, StateVector::basis(1, args.n + 1), rng);
    const std::string readout = bitstring_of(sim.records.front().outcome, args.n);
    const bool readout_ok = sim.records.front().outcome == a &&
                            sim.records.front().probability_at_draw == 1.0;

    if (args.as_json) {
        json j;
        j["mode"] = "rewrite";
        j["n"] = args.n;
        j["a"] = args.a;
        j["conjugate_cnot_count"] = conjugations;
        j["equivalent"] = can_certify ? json(certified) : json(nullptr);
        if (can_certify) j["max_deviation"] = deviation;
        j["readout"] = readout;
        j["readout_deterministic"] = readout_ok;
        j["trace"] = trace_to_json(trace);
        j["circuit"] = json::parse(serialize_circuit(rewritten));
        j["seed"] = args.seed;
        out << j.dump() << "\n";
    } else {
        out << "one-query circuit (boxed):\n" << render_ascii(original) << "\n";
        out << "rewrite trace:\n" << trace_to_json_lines(trace);
        out << "\nreversed form:\n" << render_ascii(rewritten) << "\n";
        out << "conjugate_cnot applications: " << conjugations << "\n";
        if (can_certify)
            out << "equivalent: " << (certified ? "true" : "false")
                << " (max deviation " << fmt_double(deviation) << ")\n";
        else
            out << "equivalent: not certified (width > "
                << kMaxEquivalenceWidth << ")\n";
        out << "readout: " << readout << (readout_ok ? " (deterministic)" : "") << "\n";
        out << "seed: " << args.seed << "\n";
    }
    return (!can_certify || certified) && readout_ok ? kExitOk : kExitVerifyFailed;
}

struct SimulateArgs {
    std::string path;
    std::string initial;
    std::uint64_t seed = 0;
    bool as_json = false;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    const Circuit c = load_circuit(args.path);
    StateVector s(c.width);
    if (!args.initial.empty())
        s = StateVector::basis(parse_bits(args.initial, static_cast<std::size_t>(c.width)),
                               c.width);
    RandomSource rng(args.seed);
    SimulationResult result = simulate(c, std::move(s), rng);

    if (args.as_json) {
        json j;
        j["width"] = c.width;
        j["seed"] = args.seed;
        json recs = json::array();
        for (const MeasurementRecord& r : result.records)
            recs.push_back(record_to_json(r));
        j["records"] = std::move(recs);
        json amps = json::array();
        for (const Amplitude& a : result.state.amplitudes())
            amps.push_back({a.real(), a.imag()});
        j["amplitudes"] = std::move(amps);
        out << j.dump() << "\n";
    } else {
        out << "seed: " << args.seed << "\n";
        for (const MeasurementRecord& r : result.records)
            out << format_record(r) << "\n";
        out << dump_state(result.state);
    }
    return kExitOk;
}

struct RewriteArgs {
    std::string path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool as_json = false;
};

int cmd_rewrite(const RewriteArgs& args, std::ostream& out) {
    const Circuit c = load_circuit(args.path);
    const bool has_oracle = std::any_of(c.ops.begin(), c.ops.end(), [](const CircuitOp& op) {
        return std::holds_alternative<OracleOp>(op);
    });
    auto [rewritten, trace] = has_oracle ? bv_simplify(c) : simplify_local(c);

    bool can_certify = c.width <= kMaxEquivalenceWidth;
    double deviation = 0.0;
    bool certified = false;
    if (can_certify) {
        deviation = circuit_deviation(unitary_prefix_of(c), unitary_prefix_of(rewritten));
        certified = deviation <= kPhaseTolerance;
    }

    if (!args.out_path.empty()) {
        std::ofstream f(args.out_path);
        if (!f) throw std::invalid_argument("cannot write " + args.out_path);
        f << serialize_circuit(rewritten) << "\n";
    }

    if (args.as_json) {
        json j;
        j["seed"] = args.seed;
        j["ops_before"] = c.ops.size();
        j["ops_after"] = rewritten.ops.size();
        j["equivalent"] = can_certify ? json(certified) : json(nullptr);
        if (can_certify) j["max_deviation"] = deviation;
        j["trace"] = trace_to_json(trace);
        j["circuit"] = json::parse(serialize_circuit(rewritten));
        out << j.dump() << "\n";
    } else {
        out << trace_to_json_lines(trace);
        out << "ops: " << c.ops.size() << " -> " << rewritten.ops.size() << "\n";
        if (can_certify)
            out << "equivalent: " << (certified ? "true" : "false")
                << " (max deviation " << fmt_double(deviation) << ")\n";
        else
            out << "equivalent: not certified (width > " << kMaxEquivalenceWidth << ")\n";
        out << "rewritten:\n" << render_ascii(rewritten);
        out << "seed: " << args.seed << "\n";
    }
    return !can_certify || certified ? kExitOk : kExitVerifyFailed;
}

struct VerifyArgs {
    std::string name;
    std::vector<std::string> circuit_paths;
    double tol = kPhaseTolerance;
    bool tol_set = false;
    bool as_json = false;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    if (!args.circuit_paths.empty()) {
        const Circuit c1 = load_circuit(args.circuit_paths[0]);
        const Circuit c2 = load_circuit(args.circuit_paths[1]);
        const double dev = circuit_deviation(c1, c2);
        const bool ok = dev <= args.tol;
        if (args.as_json) {
            json j;
            j["pass"] = ok;
            j["max_deviation"] = dev;
            j["tolerance"] = args.tol;
            out << j.dump() << "\n";
        } else {
            out << (ok ? "PASS" : "FAIL") << " circuits equivalent up to global phase, "
                << "max deviation " << fmt_double(dev) << " (tol "
                << fmt_double(args.tol) << ")\n";
        }
        return ok ? kExitOk : kExitVerifyFailed;
    }

    // Built-in identities use strict entrywise equality at 1e-12 by default.
    const double tol = args.tol_set ? args.tol : 1e-12;
    std::vector<const Identity*> picked;
    if (args.name == "all") {
        for (const Identity& id : identities())
            if (id.expect_pass) picked.push_back(&id);
    } else {
        const Identity* id = find_identity(args.name);
        if (!id) throw std::invalid_argument("unknown identity \"" + args.name + "\"");
        picked.push_back(id);
    }

    bool all_ok = true;
    json arr = json::array();
    for (const Identity* id : picked) {
        const double dev = identity_deviation(*id);
        const bool ok = dev <= tol;
        all_ok = all_ok && ok;
        if (args.as_json) {
            json j;
            j["name"] = id->name;
            j["pass"] = ok;
            j["max_deviation"] = dev;
            j["tolerance"] = tol;
            arr.push_back(std::move(j));
        } else {
            out << (ok ? "PASS" : "FAIL") << " " << id->name << ": " << id->description
                << " (max deviation " << fmt_double(dev) << ", tol " << fmt_double(tol)
                << ")\n";
        }
    }
    if (args.as_json) out << arr.dump() << "\n";
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_dump_gates(bool as_json, std::ostream& out) {
    const std::vector<std::pair<std::string, GateMatrix>> table = {
        {"X", matrix_of(Gate::x(0), 1)},
        {"Z", matrix_of(Gate::z(0), 1)},
        {"Y", matrix_of(Gate::y(0), 1)},
        {"YH", matrix_of(Gate::yh(0), 1)},
        {"H", matrix_of(Gate::h(0), 1)},
        {"I", matrix_of(Gate::identity(0), 1)},
        {"CNOT", matrix_of(Gate::cnot(1, 0), 2)},
        {"CZ", matrix_of(Gate::cz(1, 0), 2)},
        {"SWAP", matrix_of(Gate::swap(1, 0), 2)},
        {"P+", pauli_projectors().first},
        {"P-", pauli_projectors().second},
    };
    if (as_json) {
        json j;
        for (const auto& [name, m] : table) j[name] = matrix_to_json(m);
        out << j.dump() << "\n";
    } else {
        for (const auto& [name, m] : table) {
            out << name << "\n";
            print_matrix(out, m);
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"desk-scale state-vector simulator, circuit rewriter, and "
                 "one-query hidden-string solver"};
    app.require_subcommand(1);

    BvArgs bv;
    CLI::App* bv_cmd = app.add_subcommand(
        "bv", "solve for the oracle's hidden string (quantum, classical, or by rewriting)");
    bv_cmd->add_option("--n", bv.n, "input register width")->required();
    bv_cmd->add_option("--a", bv.a, "hidden bitstring, length n")->required();
    bv_cmd->add_option("--mode", bv.mode, "quantum | classical | rewrite")
        ->check(CLI::IsMember({"quantum", "classical", "rewrite"}));
    bv_cmd->add_option("--seed", bv.seed, "measurement seed (default 0)");
    bv_cmd->add_flag("--json", bv.as_json, "machine-readable output");

    SimulateArgs sim;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "run a circuit file");
    sim_cmd->add_option("file", sim.path, "circuit JSON file")->required();
    sim_cmd->add_option("--initial", sim.initial, "initial basis bitstring (width bits)");
    sim_cmd->add_option("--seed", sim.seed, "measurement seed (default 0)");
    sim_cmd->add_flag("--json", sim.as_json, "machine-readable output");

    RewriteArgs rw;
    CLI::App* rw_cmd = app.add_subcommand(
        "rewrite", "simplify a circuit file; boxed oracles are expanded and conjugated");
    rw_cmd->add_option("file", rw.path, "circuit JSON file")->required();
    rw_cmd->add_option("--out", rw.out_path, "write the rewritten circuit here");
    rw_cmd->add_option("--seed", rw.seed, "echoed for reproducibility");
    rw_cmd->add_flag("--json", rw.as_json, "machine-readable output");

    VerifyArgs vf;
    CLI::App* vf_cmd = app.add_subcommand(
        "verify", "check a built-in identity by name, or two circuit files");
    vf_cmd->add_option("name", vf.name, "identity name, or 'all'");
    CLI::Option* circopt =
        vf_cmd->add_option("--circuits", vf.circuit_paths, "two circuit files")
            ->expected(2);
    CLI::Option* tolopt = vf_cmd->add_option("--tol", vf.tol, "deviation tolerance");
    vf_cmd->add_flag("--json", vf.as_json, "machine-readable output");

    bool dump_json = false;
    CLI::App* dump_cmd =
        app.add_subcommand("dump-gates", "print the named gate matrices");
    dump_cmd->add_flag("--json", dump_json, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 order
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (bv_cmd->parsed()) return cmd_bv(bv, out);
        if (sim_cmd->parsed()) return cmd_simulate(sim, out);
        if (rw_cmd->parsed()) return cmd_rewrite(rw, out);
        if (vf_cmd->parsed()) {
            vf.tol_set = tolopt->count() > 0;
            if (vf.name.empty() && circopt->count() == 0)
                throw std::invalid_argument("verify needs an identity name or --circuits");
            if (!vf.name.empty() && circopt->count() > 0)
                throw std::invalid_argument("verify takes a name or --circuits, not both");
            return cmd_verify(vf, out);
        }
        if (dump_cmd->parsed()) return cmd_dump_gates(dump_json, out);
    } catch (const CircuitParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace qcsim
