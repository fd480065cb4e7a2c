"""Desk-scale state-vector simulator, circuit rewriter, and one-query
hidden-string solver. The heavy lifting lives in the C++ extension; this
package re-exports its public surface."""

from ._core import (
    BvOracle,
    BvResult,
    Circuit,
    Gate,
    MeasurementRecord,
    RandomSource,
    RewriteStep,
    SimulationResult,
    SingleQubitSplit,
    StateVector,
    apply,
    bitstring_of,
    bv_circuit,
    bv_circuit_with_hidden_string,
    bv_simplify,
    circuit_deviation,
    circuit_unitary,
    dot_mod2,
    dump_state,
    equal_up_to_global_phase,
    equivalence_check,
    exact_distribution,
    expand_oracle,
    format_record,
    hadamard_all,
    matrix_of,
    measure_all,
    measure_all_via_singles,
    measure_one,
    parse_circuit,
    pauli_projectors,
    prepare_zero,
    render_ascii,
    rewrite_step,
    serialize_circuit,
    simplify_local,
    simulate,
    solve_classical,
    solve_quantum,
    split_on_qubit,
    swap_via_paulis,
    tensor,
)

__all__ = [
    "BvOracle",
    "BvResult",
    "Circuit",
    "Gate",
    "MeasurementRecord",
    "RandomSource",
    "RewriteStep",
    "SimulationResult",
    "SingleQubitSplit",
    "StateVector",
    "apply",
    "bitstring_of",
    "bv_circuit",
    "bv_circuit_with_hidden_string",
    "bv_simplify",
    "circuit_deviation",
    "circuit_unitary",
    "dot_mod2",
    "dump_state",
    "equal_up_to_global_phase",
    "equivalence_check",
    "exact_distribution",
    "expand_oracle",
    "format_record",
    "hadamard_all",
    "matrix_of",
    "measure_all",
    "measure_all_via_singles",
    "measure_one",
    "parse_circuit",
    "pauli_projectors",
    "prepare_zero",
    "render_ascii",
    "rewrite_step",
    "serialize_circuit",
    "simplify_local",
    "simulate",
    "solve_classical",
    "solve_quantum",
    "split_on_qubit",
    "swap_via_paulis",
    "tensor",
]

__version__ = "0.1.0"
