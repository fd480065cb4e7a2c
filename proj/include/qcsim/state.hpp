#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qcsim {

using Amplitude = std::complex<double>;

/// |sum |a_x|^2 - 1| must stay below this for a state to count as normalized.
inline constexpr double kNormTolerance = 1e-10;

/// Dense storage bound. 2^24 amplitudes is the largest register we support.
inline constexpr int kMaxQubits = 24;

/// Dense n-qubit pure state: 2^n complex amplitudes indexed by the basis
/// integer x. Bit j of x is the value of qubit j (qubit j carries weight 2^j),
/// and kets print qubit n-1 leftmost, so basis index 5 on three qubits is
/// |101>. A 0-qubit state is the single amplitude [1].
class StateVector {
public:
    /// The 0-qubit state [1].
    StateVector() : StateVector(0) {}

    /// |0...0> on `qubit_count` qubits.
    explicit StateVector(int qubit_count);

    /// Basis state |x> on `qubit_count` qubits.
    static StateVector basis(std::uint64_t x, int qubit_count);

    /// Wraps raw amplitudes. Length must be a power of two and every entry
    /// finite. Normalization is the caller's contract; operations that
    /// require it check it.
    static StateVector from_amplitudes(std::vector<Amplitude> amps);

    int qubit_count() const { return qubit_count_; }
    std::size_t dim() const { return amps_.size(); }

    Amplitude& amp(std::size_t i) { return amps_[i]; }
    const Amplitude& amp(std::size_t i) const { return amps_[i]; }
    std::span<const Amplitude> amplitudes() const { return amps_; }

    double norm_squared() const;
    double norm() const;
    bool is_normalized(double tol = kNormTolerance) const;

    /// Divides by the current norm. Throws if the state is (numerically) zero.
    void renormalize();

private:
    StateVector(int qubit_count, std::vector<Amplitude> amps)
        : qubit_count_(qubit_count), amps_(std::move(amps)) {}

    int qubit_count_ = 0;
    std::vector<Amplitude> amps_;
};

/// Tensor product; the left factor occupies the high-order bits, so
/// tensor(|x>, |y>) = |xy> with result[x * 2^k + y] = a[x] * b[y].
StateVector tensor(const StateVector& a, const StateVector& b);

/// True iff a = c * b for some unit scalar c, within `tol` per amplitude.
/// The phase candidate is read off b's largest-magnitude amplitude.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol);

/// Bits of x rendered qubit (bits-1) leftmost, e.g. bitstring_of(5, 3) == "101".
std::string bitstring_of(std::uint64_t x, int bits);

/// One line per amplitude: `index<TAB>bitstring<TAB>re<TAB>im`, indices
/// ascending, 15 significant digits.
std::string dump_state(const StateVector& s);

}  // namespace qcsim
