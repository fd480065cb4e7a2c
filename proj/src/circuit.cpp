#include "qcsim/circuit.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "qcsim/bv.hpp"

namespace qcsim {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kOneWireGates = {"X", "Z", "Y", "YH", "H", "I"};
const std::set<std::string> kTwoWireGates = {"CNOT", "CZ", "SWAP"};

void check_wires(const std::vector<int>& qs, int width, const std::string& what) {
    std::set<int> seen;
    for (int q : qs) {
        if (q < 0 || q >= width)
            throw std::invalid_argument(what + ": wire " + std::to_string(q) +
                                        " outside [0, " + std::to_string(width) + ")");
        if (!seen.insert(q).second)
            throw std::invalid_argument(what + ": duplicate wire " + std::to_string(q));
    }
}

void validate_op(const CircuitOp& op, int width) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
        if (kOneWireGates.count(g->name)) {
            if (g->qubits.size() != 1)
                throw std::invalid_argument("gate " + g->name + " takes one wire");
        } else if (kTwoWireGates.count(g->name)) {
            if (g->qubits.size() != 2)
                throw std::invalid_argument("gate " + g->name + " takes two wires");
        } else if (g->name == "U") {
            if (!g->matrix)
                throw std::invalid_argument("gate U requires a matrix");
            if (g->qubits.empty())
                throw std::invalid_argument("gate U takes at least one wire");
        } else {
            throw std::invalid_argument("unknown gate name \"" + g->name + "\"");
        }
        check_wires(g->qubits, width, "gate " + g->name);
        if (g->name == "U")
            to_gate(*g);  // unitarity and dimension checks
    } else if (const auto* o = std::get_if<OracleOp>(&op)) {
        if (o->inputs.empty())
            throw std::invalid_argument("oracle needs at least one input wire");
        std::vector<int> all = o->inputs;
        all.push_back(o->output);
        check_wires(all, width, "oracle");
        if (o->hidden_string && o->inputs.size() < 64 &&
            (*o->hidden_string >> o->inputs.size()) != 0)
            throw std::invalid_argument("oracle hidden string wider than its inputs");
    } else {
        const auto& m = std::get<MeasureOp>(op);
        if (m.qubits.empty())
            throw std::invalid_argument("measurement lists no wires");
        check_wires(m.qubits, width, "measure");
    }
}

}  // namespace

std::vector<int> op_qubits(const CircuitOp& op) {
    if (const auto* g = std::get_if<GateOp>(&op)) return g->qubits;
    if (const auto* o = std::get_if<OracleOp>(&op)) {
        std::vector<int> all = o->inputs;
        all.push_back(o->output);
        return all;
    }
    return std::get<MeasureOp>(op).qubits;
}

bool op_touches(const CircuitOp& op, int q) {
    const std::vector<int> qs = op_qubits(op);
    return std::find(qs.begin(), qs.end(), q) != qs.end();
}

bool ops_equal(const CircuitOp& a, const CircuitOp& b) {
    if (a.index() != b.index()) return false;
    if (const auto* ga = std::get_if<GateOp>(&a)) {
        const auto& gb = std::get<GateOp>(b);
        if (ga->name != gb.name || ga->qubits != gb.qubits) return false;
        if (!ga->matrix != !gb.matrix) return false;
        return !ga->matrix || *ga->matrix == *gb.matrix;
    }
    if (const auto* oa = std::get_if<OracleOp>(&a)) {
        const auto& ob = std::get<OracleOp>(b);
        return oa->inputs == ob.inputs && oa->output == ob.output &&
               oa->hidden_string == ob.hidden_string;
    }
    return std::get<MeasureOp>(a).qubits == std::get<MeasureOp>(b).qubits;
}

void Circuit::validate() const {
    if (width < 1 || width > kMaxQubits)
        throw std::invalid_argument("circuit width must be in [1, " +
                                    std::to_string(kMaxQubits) + "]");
    bool measuring = false;
    for (const CircuitOp& op : ops) {
        validate_op(op, width);
        const bool is_measure = std::holds_alternative<MeasureOp>(op);
        if (measuring && !is_measure)
            throw std::invalid_argument("measurements must form a trailing block");
        measuring = measuring || is_measure;
    }
}

std::size_t Circuit::unitary_prefix_length() const {
    std::size_t k = 0;
    while (k < ops.size() && !std::holds_alternative<MeasureOp>(ops[k])) ++k;
    return k;
}

// ---------------------------------------------------------------------------
// JSON round trip

namespace {

std::pair<int, int> line_column_of(std::string_view text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::uint64_t parse_bitstring(const std::string& s, std::size_t want_bits) {
    if (s.size() != want_bits)
        throw std::invalid_argument("bitstring \"" + s + "\" must have " +
                                    std::to_string(want_bits) + " bits");
    std::uint64_t v = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("bitstring \"" + s + "\" has non-binary digits");
        v = (v << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return v;
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

GateMatrix matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("matrix must be a non-empty array of rows");
    const auto dim = static_cast<Eigen::Index>(rows.size());
    GateMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
            throw std::invalid_argument("matrix rows must be square");
        for (Eigen::Index j = 0; j < dim; ++j) {
            const json& e = row[static_cast<std::size_t>(j)];
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("matrix entries are [re, im] pairs");
            m(i, j) = Amplitude(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw CircuitParseError("syntax error at line " + std::to_string(line) +
                                    ", column " + std::to_string(col) + ": " + e.what(),
                                line, col);
    }

    if (!doc.is_object() || !doc.contains("width") || !doc.contains("ops"))
        throw std::invalid_argument("circuit document needs \"width\" and \"ops\"");

    Circuit c;
    c.width = doc["width"].get<int>();
    for (const json& j : doc["ops"]) {
        if (j.contains("gate")) {
            GateOp g;
            g.name = j["gate"].get<std::string>();
            g.qubits = j["q"].get<std::vector<int>>();
            if (j.contains("matrix"))
                g.matrix = std::make_shared<GateMatrix>(matrix_from_json(j["matrix"]));
            c.ops.emplace_back(std::move(g));
        } else if (j.contains("oracle")) {
            if (j["oracle"].get<std::string>() != "BV")
                throw std::invalid_argument("unknown oracle kind \"" +
                                            j["oracle"].get<std::string>() + "\"");
            OracleOp o;
            o.inputs = j["in"].get<std::vector<int>>();
            o.output = j["out"].get<int>();
            if (j.contains("a"))
                o.hidden_string = parse_bitstring(j["a"].get<std::string>(), o.inputs.size());
            c.ops.emplace_back(std::move(o));
        } else if (j.contains("measure")) {
            c.ops.emplace_back(MeasureOp{j["measure"].get<std::vector<int>>()});
        } else {
            throw std::invalid_argument("op is none of gate/oracle/measure: " + j.dump());
        }
    }
    c.validate();
    return c;
}

std::string serialize_circuit(const Circuit& c) {
    c.validate();
    json doc;
    doc["width"] = c.width;
    json ops = json::array();
    for (const CircuitOp& op : c.ops) {
        json j;
        if (const auto* g = std::get_if<GateOp>(&op)) {
            j["gate"] = g->name;
            j["q"] = g->qubits;
            if (g->matrix) j["matrix"] = matrix_to_json(*g->matrix);
        } else if (const auto* o = std::get_if<OracleOp>(&op)) {
            j["oracle"] = "BV";
            j["in"] = o->inputs;
            j["out"] = o->output;
            if (o->hidden_string)
                j["a"] = bitstring_of(*o->hidden_string, static_cast<int>(o->inputs.size()));
        } else {
            j["measure"] = std::get<MeasureOp>(op).qubits;
        }
        ops.push_back(std::move(j));
    }
    doc["ops"] = std::move(ops);
    return doc.dump();
}

Gate to_gate(const GateOp& op) {
    const std::string& n = op.name;
    if (n == "X") return Gate::x(op.qubits[0]);
    if (n == "Z") return Gate::z(op.qubits[0]);
    if (n == "Y") return Gate::y(op.qubits[0]);
    if (n == "YH") return Gate::yh(op.qubits[0]);
    if (n == "H") return Gate::h(op.qubits[0]);
    if (n == "I") return Gate::identity(op.qubits[0]);
    if (n == "CNOT") return Gate::cnot(op.qubits[0], op.qubits[1]);
    if (n == "CZ") return Gate::cz(op.qubits[0], op.qubits[1]);
    if (n == "SWAP") return Gate::swap(op.qubits[0], op.qubits[1]);
    if (n == "U") return Gate::unitary(*op.matrix, op.qubits);
    throw std::invalid_argument("unknown gate name \"" + n + "\"");
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

MeasurementRecord measure_listed(StateVector& s, const std::vector<int>& qubits,
                                 RandomSource& rng) {
    std::uint64_t outcome = 0;
    double joint = 1.0;
    for (int q : qubits) {
        MeasurementRecord r = measure_one(s, q, rng);
        outcome = (outcome << 1) | r.outcome;
        joint *= r.probability_at_draw;
        s = std::move(r.post_state);
    }
    return MeasurementRecord{outcome, static_cast<int>(qubits.size()), joint, s};
}

}  // namespace

SimulationResult simulate(const Circuit& c, StateVector initial,
                          RandomSource& rng, BvOracle* oracle) {
    c.validate();
    if (initial.qubit_count() != c.width)
        throw std::invalid_argument("initial state has " +
                                    std::to_string(initial.qubit_count()) +
                                    " qubits, circuit width is " +
                                    std::to_string(c.width));
    SimulationResult out{std::move(initial), {}};
    for (const CircuitOp& op : c.ops) {
        if (const auto* g = std::get_if<GateOp>(&op)) {
            apply_in_place(to_gate(*g), out.state);
        } else if (const auto* o = std::get_if<OracleOp>(&op)) {
            if (oracle) {
                // The bound black box counts the query and fixes the layout.
                const int n = oracle->input_width();
                bool canonical = c.width == n + 1 && o->output == 0 &&
                                 static_cast<int>(o->inputs.size()) == n;
                for (int j = 0; canonical && j < n; ++j)
                    canonical = o->inputs[static_cast<std::size_t>(j)] == n - j;
                if (!canonical)
                    throw std::invalid_argument(
                        "bound oracle requires the canonical layout (inputs n..1, output 0)");
                oracle->apply_quantum(out.state);
            } else if (o->hidden_string) {
                apply_hidden_dot_product(out.state, o->inputs, o->output,
                                         *o->hidden_string);
            } else {
                throw std::invalid_argument(
                    "oracle marker has no hidden string and no oracle is bound");
            }
        } else {
            const auto& m = std::get<MeasureOp>(op);
            out.records.push_back(measure_listed(out.state, m.qubits, rng));
        }
    }
    return out;
}

GateMatrix circuit_unitary(const Circuit& c) {
    c.validate();
    if (c.width > kMaxMatrixQubits)
        throw std::invalid_argument("circuit_unitary supports width <= " +
                                    std::to_string(kMaxMatrixQubits));
    if (c.unitary_prefix_length() != c.ops.size())
        throw std::invalid_argument("circuit_unitary rejects measurement ops");
    const std::size_t dim = std::size_t{1} << c.width;
    GateMatrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t x = 0; x < dim; ++x) {
        StateVector s = StateVector::basis(x, c.width);
        for (const CircuitOp& op : c.ops) {
            if (const auto* g = std::get_if<GateOp>(&op)) {
                apply_in_place(to_gate(*g), s);
            } else {
                const auto& o = std::get<OracleOp>(op);
                if (!o.hidden_string)
                    throw std::invalid_argument(
                        "circuit_unitary needs the oracle's hidden string");
                apply_hidden_dot_product(s, o.inputs, o.output, *o.hidden_string);
            }
        }
        for (std::size_t r = 0; r < dim; ++r)
            u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(x)) = s.amp(r);
    }
    return u;
}

// ---------------------------------------------------------------------------
// Canonical one-query circuit

namespace {

Circuit bv_shell(int n, std::optional<std::uint64_t> a) {
    if (n < 1 || n > kMaxQubits - 1)
        throw std::invalid_argument("input register width out of range");
    Circuit c;
    c.width = n + 1;
    for (int q = n; q >= 0; --q) c.ops.emplace_back(GateOp{"H", {q}, nullptr});
    OracleOp o;
    o.inputs.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) o.inputs[static_cast<std::size_t>(j)] = n - j;
    o.output = 0;
    o.hidden_string = a;
    c.ops.emplace_back(std::move(o));
    for (int q = n; q >= 0; --q) c.ops.emplace_back(GateOp{"H", {q}, nullptr});
    MeasureOp m;
    m.qubits.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) m.qubits[static_cast<std::size_t>(j)] = n - j;
    c.ops.emplace_back(std::move(m));
    return c;
}

}  // namespace

Circuit bv_circuit(int n) { return bv_shell(n, std::nullopt); }

Circuit bv_circuit_with_hidden_string(int n, std::uint64_t a) {
    if (n < 64 && (a >> n) != 0)
        throw std::invalid_argument("hidden string does not fit the input width");
    return bv_shell(n, a);
}

}  // namespace qcsim
