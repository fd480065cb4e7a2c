#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcsim/bv.hpp"
#include "qcsim/circuit.hpp"
#include "qcsim/gates.hpp"
#include "qcsim/measurement.hpp"
#include "qcsim/render.hpp"
#include "qcsim/rewrite.hpp"
#include "qcsim/state.hpp"

namespace py = pybind11;
using namespace qcsim;

namespace {

std::vector<Amplitude> amplitudes_list(const StateVector& s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

const RewriteRule& lookup_rule(const std::string& name) { return rule_by_name(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "state-vector simulation, circuit rewriting, and the one-query "
              "hidden-string solver";

    py::register_exception<CircuitParseError>(m, "CircuitParseError", PyExc_ValueError);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int>(), py::arg("qubit_count"))
        .def_static("basis", &StateVector::basis, py::arg("x"), py::arg("qubit_count"))
        .def_static("from_amplitudes", &StateVector::from_amplitudes, py::arg("amps"))
        .def_property_readonly("qubit_count", &StateVector::qubit_count)
        .def_property_readonly("dim", &StateVector::dim)
        .def("amplitudes", &amplitudes_list)
        .def("__getitem__",
             [](const StateVector& s, std::size_t i) {
                 if (i >= s.dim()) throw py::index_error();
                 return s.amp(i);
             })
        .def("__len__", &StateVector::dim)
        .def("norm", &StateVector::norm)
        .def("is_normalized", &StateVector::is_normalized,
             py::arg("tol") = kNormTolerance)
        .def("renormalize", &StateVector::renormalize)
        .def("__repr__", [](const StateVector& s) {
            return "<StateVector on " + std::to_string(s.qubit_count()) + " qubits>";
        });

    m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
    m.def("equal_up_to_global_phase", &equal_up_to_global_phase, py::arg("a"),
          py::arg("b"), py::arg("tol"));
    m.def("bitstring_of", &bitstring_of, py::arg("x"), py::arg("bits"));
    m.def("dump_state", &dump_state, py::arg("state"));

    py::class_<Gate> gate(m, "Gate");
    gate.def_static("x", &Gate::x, py::arg("q"))
        .def_static("z", &Gate::z, py::arg("q"))
        .def_static("y", &Gate::y, py::arg("q"))
        .def_static("yh", &Gate::yh, py::arg("q"))
        .def_static("h", &Gate::h, py::arg("q"))
        .def_static("identity", &Gate::identity, py::arg("q"))
        .def_static("controlled", &Gate::controlled, py::arg("inner"), py::arg("control"))
        .def_static("cnot", &Gate::cnot, py::arg("control"), py::arg("target"))
        .def_static("cz", &Gate::cz, py::arg("q1"), py::arg("q2"))
        .def_static("swap", &Gate::swap, py::arg("q1"), py::arg("q2"))
        .def_static("unitary", &Gate::unitary, py::arg("matrix"), py::arg("targets"))
        .def("qubits", &Gate::qubits);

    m.def("apply", [](const Gate& g, const StateVector& s) { return apply(g, s); },
          py::arg("gate"), py::arg("state"));
    m.def("matrix_of", &matrix_of, py::arg("gate"), py::arg("n"));
    m.def("hadamard_all", &hadamard_all, py::arg("n"));
    m.def("swap_via_paulis", &swap_via_paulis);
    m.def("pauli_projectors", &pauli_projectors);

    py::class_<RandomSource>(m, "RandomSource")
        .def(py::init<std::uint64_t>(), py::arg("seed") = 0)
        .def_property_readonly("seed", &RandomSource::seed)
        .def("next_u64", &RandomSource::next_u64)
        .def("next_uniform", &RandomSource::next_uniform);

    py::class_<MeasurementRecord>(m, "MeasurementRecord")
        .def_readonly("outcome", &MeasurementRecord::outcome)
        .def_readonly("bit_count", &MeasurementRecord::bit_count)
        .def_readonly("probability_at_draw", &MeasurementRecord::probability_at_draw)
        .def_readonly("post_state", &MeasurementRecord::post_state)
        .def("__repr__", [](const MeasurementRecord& r) { return format_record(r); });

    py::class_<SingleQubitSplit>(m, "SingleQubitSplit")
        .def_readonly("coeff0", &SingleQubitSplit::coeff0)
        .def_readonly("coeff1", &SingleQubitSplit::coeff1)
        .def_readonly("phi0", &SingleQubitSplit::phi0)
        .def_readonly("phi1", &SingleQubitSplit::phi1);

    m.def("measure_all", &measure_all, py::arg("state"), py::arg("rng"));
    m.def("split_on_qubit", &split_on_qubit, py::arg("state"), py::arg("qubit"));
    m.def("measure_one", &measure_one, py::arg("state"), py::arg("qubit"), py::arg("rng"));
    m.def("measure_all_via_singles", &measure_all_via_singles, py::arg("state"),
          py::arg("rng"));
    m.def("exact_distribution", &exact_distribution, py::arg("state"));
    m.def("prepare_zero", &prepare_zero, py::arg("state"), py::arg("rng"));
    m.def("format_record", &format_record, py::arg("record"));

    py::class_<Circuit>(m, "Circuit")
        .def_property_readonly("width", [](const Circuit& c) { return c.width; })
        .def("__len__", [](const Circuit& c) { return c.ops.size(); })
        .def("validate", &Circuit::validate)
        .def("unitary_prefix_length", &Circuit::unitary_prefix_length)
        .def("__repr__", [](const Circuit& c) { return serialize_circuit(c); });

    m.def("parse_circuit", [](const std::string& text) { return parse_circuit(text); },
          py::arg("text"));
    m.def("serialize_circuit", &serialize_circuit, py::arg("circuit"));
    m.def("render_ascii", &render_ascii, py::arg("circuit"));
    m.def("circuit_unitary", &circuit_unitary, py::arg("circuit"));

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("state", &SimulationResult::state)
        .def_readonly("records", &SimulationResult::records);

    m.def(
        "simulate",
        [](const Circuit& c, const StateVector& initial, RandomSource& rng,
           BvOracle* oracle) { return simulate(c, initial, rng, oracle); },
        py::arg("circuit"), py::arg("initial"), py::arg("rng"),
        py::arg("oracle") = nullptr);

    py::class_<RewriteStep>(m, "RewriteStep")
        .def_readonly("rule", &RewriteStep::rule)
        .def_readonly("position", &RewriteStep::position)
        .def_readonly("before_len", &RewriteStep::before_len)
        .def_readonly("after_len", &RewriteStep::after_len)
        .def("__repr__", [](const RewriteStep& s) {
            return trace_to_json_lines(std::span<const RewriteStep>(&s, 1));
        });

    m.def("rewrite_step",
          [](const Circuit& c, const std::string& rule, std::size_t position) {
              return rewrite_step(c, lookup_rule(rule), position);
          },
          py::arg("circuit"), py::arg("rule"), py::arg("position"));
    m.def("expand_oracle", &expand_oracle, py::arg("circuit"), py::arg("a"));
    m.def("bv_simplify", &bv_simplify, py::arg("circuit"));
    m.def("simplify_local", &simplify_local, py::arg("circuit"));
    m.def("equivalence_check", &equivalence_check, py::arg("c1"), py::arg("c2"),
          py::arg("tol") = kPhaseTolerance);
    m.def("circuit_deviation", &circuit_deviation, py::arg("c1"), py::arg("c2"));

    m.def("dot_mod2", &dot_mod2, py::arg("x"), py::arg("a"));

    py::class_<BvOracle>(m, "BvOracle")
        .def(py::init<int, std::uint64_t>(), py::arg("input_width"), py::arg("a"))
        .def_property_readonly("input_width", &BvOracle::input_width)
        .def_property_readonly("queries", &BvOracle::queries)
        .def("apply_quantum",
             [](BvOracle& o, const StateVector& s) {
                 StateVector copy = s;
                 o.apply_quantum(copy);
                 return copy;
             })
        .def("query_classical", &BvOracle::query_classical, py::arg("x"))
        .def("hidden_string_for_derivation", &BvOracle::hidden_string_for_derivation);

    py::class_<BvResult>(m, "BvResult")
        .def_readonly("a_found", &BvResult::a_found)
        .def_readonly("queries_used", &BvResult::queries_used)
        .def_readonly("final_amplitude", &BvResult::final_amplitude);

    m.def("solve_classical", &solve_classical, py::arg("oracle"));
    m.def("solve_quantum", &solve_quantum, py::arg("oracle"), py::arg("rng"));
    m.def("bv_circuit", &bv_circuit, py::arg("n"));
    m.def("bv_circuit_with_hidden_string", &bv_circuit_with_hidden_string,
          py::arg("n"), py::arg("a"));
}
