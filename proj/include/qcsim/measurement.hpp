#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcsim/state.hpp"

namespace qcsim {

/// Deterministic 64-bit generator (splitmix64). State advances by
/// 0x9E3779B97F4A7C15 per draw and is finalized with the
/// 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB xor-multiply mixer; uniforms take
/// the top 53 bits, so next_uniform() is in [0, 1). The seed is the initial
/// state verbatim: identical seeds give identical draw sequences on every
/// platform. There is no global generator; every sampling operation takes
/// one of these explicitly.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed = 0) : seed_(seed), state_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

/// What a measurement gate reported: the signaled bits, the probability the
/// signaled outcome had at draw time, and the collapsed state.
struct MeasurementRecord {
    std::uint64_t outcome = 0;
    int bit_count = 0;
    double probability_at_draw = 1.0;
    StateVector post_state;
};

/// s decomposed around one qubit: s = c0 |0>phi0 + c1 |1>phi1 with the
/// measured qubit factored to the front. Coefficients are the nonnegative
/// square roots of the branch probabilities; branch phases stay inside the
/// phi. A zero-probability branch has no conditional state at all.
struct SingleQubitSplit {
    double coeff0 = 0.0;
    double coeff1 = 0.0;
    std::optional<StateVector> phi0;
    std::optional<StateVector> phi1;
};

/// Full-register measurement: outcome x with probability |a_x|^2, collapse
/// to |x>. One uniform is consumed per call, inverse-CDF over ascending x.
MeasurementRecord measure_all(const StateVector& s, RandomSource& rng);

SingleQubitSplit split_on_qubit(const StateVector& s, int qubit);

/// One-qubit measurement on an n-qubit register: bit x with probability
/// coeff_x^2, post state |x> (at the measured wire) tensor phi_x. Consumes
/// one uniform; a zero-probability branch is never selected.
MeasurementRecord measure_one(const StateVector& s, int qubit, RandomSource& rng);

/// Full measurement built from n one-qubit gates, measured high wire to low.
/// Same joint distribution as measure_all; consumes n uniforms.
MeasurementRecord measure_all_via_singles(const StateVector& s, RandomSource& rng);

/// The Born weights |a_x|^2, indexed by basis integer.
std::vector<double> exact_distribution(const StateVector& s);

/// Initializes a 1-qubit register to |0> by measuring it and applying X
/// when the gate signals 1. Exact: the result is the basis vector (1, 0).
StateVector prepare_zero(const StateVector& s, RandomSource& rng);

/// `outcome=<bitstring> p=<prob>`.
std::string format_record(const MeasurementRecord& r);

}  // namespace qcsim
