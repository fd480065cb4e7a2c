#include "qcsim/bv.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qcsim/circuit.hpp"
#include "qcsim/gates.hpp"

namespace qcsim {

int dot_mod2(std::uint64_t x, std::uint64_t a) {
    return std::popcount(x & a) & 1;
}

void apply_hidden_dot_product(StateVector& s, const std::vector<int>& inputs,
                              int output, std::uint64_t a) {
    const int n = static_cast<int>(inputs.size());
    for (int q : inputs)
        if (q < 0 || q >= s.qubit_count())
            throw std::invalid_argument("oracle input wire out of range");
    if (output < 0 || output >= s.qubit_count())
        throw std::invalid_argument("oracle output wire out of range");

    // Mask of wires whose x-bit enters x.a: inputs[j] carries bit n-1-j.
    std::size_t flip_controls = 0;
    for (int j = 0; j < n; ++j)
        if ((a >> (n - 1 - j)) & 1u)
            flip_controls |= std::size_t{1} << inputs[static_cast<std::size_t>(j)];

    const std::size_t omask = std::size_t{1} << output;
    const std::size_t dim = s.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & omask) continue;
        if (std::popcount(i & flip_controls) & 1)
            std::swap(s.amp(i), s.amp(i | omask));
    }
}

BvOracle::BvOracle(int input_width, std::uint64_t a) : n_(input_width), a_(a) {
    if (input_width < 1 || input_width > kMaxQubits - 1)
        throw std::invalid_argument("oracle input width out of range");
    if (input_width < 64 && (a >> input_width) != 0)
        throw std::invalid_argument("hidden string does not fit the input width");
}

void BvOracle::apply_quantum(StateVector& s) {
    if (s.qubit_count() != n_ + 1)
        throw std::invalid_argument("oracle expects " + std::to_string(n_ + 1) +
                                    " qubits, got " + std::to_string(s.qubit_count()));
    ++queries_;
    std::vector<int> inputs(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) inputs[static_cast<std::size_t>(j)] = n_ - j;
    apply_hidden_dot_product(s, inputs, 0, a_);
}

int BvOracle::query_classical(std::uint64_t x) {
    ++queries_;
    return dot_mod2(x, a_);
}

BvResult solve_classical(BvOracle& oracle) {
    const int n = oracle.input_width();
    std::uint64_t a = 0;
    for (int j = 0; j < n; ++j)
        if (oracle.query_classical(std::uint64_t{1} << j))
            a |= std::uint64_t{1} << j;
    return BvResult{a, oracle.queries(), 1.0};
}

BvResult solve_quantum(BvOracle& oracle, RandomSource& rng) {
    const int n = oracle.input_width();
    // Same circuit the rewrite derivation starts from, run against the
    // black box: input register |0>_n on wires n..1, output |1> on wire 0.
    const Circuit circuit = bv_circuit(n);
    SimulationResult sim =
        simulate(circuit, StateVector::basis(1, n + 1), rng, &oracle);
    const MeasurementRecord& readout = sim.records.front();
    // The output wire is untouched by the readout, so the input register's
    // |a> amplitude magnitude is the square root of the joint probability.
    return BvResult{readout.outcome, oracle.queries(),
                    std::sqrt(readout.probability_at_draw)};
}

}  // namespace qcsim
