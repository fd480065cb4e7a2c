#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcsim/gates.hpp"
#include "qcsim/measurement.hpp"
#include "qcsim/state.hpp"

namespace qcsim {

class BvOracle;

/// A named gate on explicit wires. Valid names: X, Z, Y, YH, H, I (one wire),
/// CNOT (control, target), CZ, SWAP (two wires), U (any width, ket-order
/// wires plus an explicit matrix).
struct GateOp {
    std::string name;
    std::vector<int> qubits;
    std::shared_ptr<const GateMatrix> matrix;  // U only
};

/// Black-box marker for the hidden-dot-product subroutine. `inputs` list the
/// x wires in ket order, `output` carries y. The hidden string is present
/// when the circuit is being used in derivation mode; a black-box shell
/// leaves it empty and the simulator queries a bound oracle instead.
struct OracleOp {
    std::vector<int> inputs;
    int output = 0;
    std::optional<std::uint64_t> hidden_string;
};

/// Computational-basis readout of the listed wires, first listed = most
/// significant outcome bit. Measured one wire at a time, in listed order.
struct MeasureOp {
    std::vector<int> qubits;
};

using CircuitOp = std::variant<GateOp, OracleOp, MeasureOp>;

/// Wires touched by an op, in no particular order.
std::vector<int> op_qubits(const CircuitOp& op);
bool op_touches(const CircuitOp& op, int q);
bool ops_equal(const CircuitOp& a, const CircuitOp& b);

/// Ordered gate list on `width` wires. Measurements may appear only as a
/// trailing block; everything before them is the unitary prefix that the
/// rewriter is allowed to touch.
struct Circuit {
    int width = 0;
    std::vector<CircuitOp> ops;

    /// Throws std::invalid_argument on any malformed op.
    void validate() const;

    /// Number of leading non-measurement ops.
    std::size_t unitary_prefix_length() const;
};

/// Raised on malformed circuit text; line/column are 1-based.
struct CircuitParseError : std::runtime_error {
    CircuitParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg), line(line_), column(column_) {}
    int line = 0;
    int column = 0;
};

/// JSON document {"width": W, "ops": [...]}. parse(serialize(c)) == c for
/// every valid circuit. Rejects unknown gate names, duplicate wires within
/// an op, wires outside [0, width), and non-trailing measurements.
Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& c);

Gate to_gate(const GateOp& op);

struct SimulationResult {
    StateVector state;
    std::vector<MeasurementRecord> records;
};

/// Runs ops in order. Oracle markers dispatch to `oracle` when one is bound
/// (counting the query; the marker must then match the oracle's canonical
/// layout) and otherwise use the marker's own hidden string. Measurement
/// markers consume one uniform per listed wire.
SimulationResult simulate(const Circuit& c, StateVector initial,
                          RandomSource& rng, BvOracle* oracle = nullptr);

/// Dense unitary of a measurement-free circuit, width <= kMaxMatrixQubits.
GateMatrix circuit_unitary(const Circuit& c);

/// The one-query interference circuit on n+1 wires: H on every wire, the
/// oracle marker (inputs n..1, output 0), H on every wire, then readout of
/// the input register. The shell form leaves the hidden string unbound.
Circuit bv_circuit(int n);
Circuit bv_circuit_with_hidden_string(int n, std::uint64_t a);

}  // namespace qcsim
