#pragma once

#include <cstdint>
#include <vector>

#include "qcsim/measurement.hpp"
#include "qcsim/state.hpp"

namespace qcsim {

/// Bitwise mod-2 inner product: x_{n-1}a_{n-1} ^ ... ^ x_0 a_0.
int dot_mod2(std::uint64_t x, std::uint64_t a);

/// Applies |x>|y> -> |x>|y ^ x.a> for an arbitrary wire assignment:
/// `inputs` lists the wires carrying x in ket order (first entry is the most
/// significant bit of x) and `output` carries y. Shared by the oracle object
/// and the circuit simulator.
void apply_hidden_dot_product(StateVector& s, const std::vector<int>& inputs,
                              int output, std::uint64_t a);

/// The query-counted black box hiding an n-bit string a. Its quantum action
/// on n+1 wires (inputs on wires n..1, output on wire 0) is the unitary
/// |x>_n |y>_1 -> |x>_n |y ^ x.a>_1. Every invocation, quantum or classical,
/// bumps the query counter. Solvers learn a only through the two query
/// methods; the derivation accessor below is the one deliberate leak.
class BvOracle {
public:
    BvOracle(int input_width, std::uint64_t a);

    int input_width() const { return n_; }
    std::uint64_t queries() const { return queries_; }

    /// One quantum query: the oracle unitary applied to an (n+1)-qubit state.
    void apply_quantum(StateVector& s);

    /// One classical query: returns x.a.
    int query_classical(std::uint64_t x);

    /// Reads the hidden string around the query interface. For circuit
    /// expansion and tests only; anything counting queries must not call it.
    std::uint64_t hidden_string_for_derivation() const { return a_; }

private:
    int n_;
    std::uint64_t a_;
    std::uint64_t queries_ = 0;
};

struct BvResult {
    std::uint64_t a_found = 0;
    std::uint64_t queries_used = 0;
    /// Magnitude of the input register's |a> amplitude just before readout.
    /// Meaningful on the quantum path only (the classical solver reports 1).
    double final_amplitude = 1.0;
};

/// Queries x = 2^j for j = 0..n-1 and assembles a bit by bit. n queries.
BvResult solve_classical(BvOracle& oracle);

/// One-query solver: |0>_n |1>, H on all n+1 wires, one oracle call, H on
/// all n+1 wires, then readout of the input register. The register holds
/// |a> with amplitude 1, so the result is deterministic.
BvResult solve_quantum(BvOracle& oracle, RandomSource& rng);

}  // namespace qcsim
