#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

#include "qcsim/state.hpp"

namespace qcsim {

using GateMatrix = Eigen::MatrixXcd;

/// max |(U^dag U - 1)_ij| allowed when accepting a user-supplied unitary.
inline constexpr double kUnitaryTolerance = 1e-10;

/// Largest register for which matrix_of / circuit_unitary will build the
/// full 2^n x 2^n dense matrix.
inline constexpr int kMaxMatrixQubits = 11;

/// A circuit element as an algebraic value: which operation, on which wires.
/// Two Y conventions are carried side by side: Y = XZ (real entries, not
/// hermitian) and Yh = iXZ (the hermitian form).
class Gate {
public:
    enum class Kind { X, Z, Y, Yh, H, Identity, Controlled, Swap, Unitary, HadamardAll };

    static Gate x(int q);
    static Gate z(int q);
    static Gate y(int q);
    static Gate yh(int q);
    static Gate h(int q);
    static Gate identity(int q);

    /// One control wire around any single-qubit gate.
    static Gate controlled(Gate inner, int control);
    static Gate cnot(int control, int target);
    static Gate cz(int q1, int q2);
    static Gate swap(int q1, int q2);

    /// Generic k-qubit unitary. `targets` are listed ket-order (first entry
    /// is the most significant local bit). Rejects matrices that fail
    /// U^dag U = 1 within kUnitaryTolerance.
    static Gate unitary(GateMatrix m, std::vector<int> targets);

    Kind kind() const { return kind_; }
    const std::vector<int>& targets() const { return targets_; }
    int control() const { return control_; }
    const Gate& inner() const { return *inner_; }
    const GateMatrix& unitary_matrix() const { return *matrix_; }

    /// Every wire the gate touches (targets plus control).
    std::vector<int> qubits() const;
    int max_qubit() const;

private:
    friend Gate hadamard_all(int n);

    Gate(Kind kind, std::vector<int> targets) : kind_(kind), targets_(std::move(targets)) {}

    Kind kind_;
    std::vector<int> targets_;
    int control_ = -1;
    std::shared_ptr<const Gate> inner_;
    std::shared_ptr<const GateMatrix> matrix_;
};

/// In-place action of g on s. Throws if a wire is out of range.
void apply_in_place(const Gate& g, StateVector& s);

/// Value-returning form of the same.
StateVector apply(const Gate& g, StateVector s);

/// Dense 2^n x 2^n embedding of g (identity on untouched wires), built by
/// per-column index algebra rather than the amplitude kernels, so the two
/// paths check each other.
GateMatrix matrix_of(const Gate& g, int n);

/// Kronecker product with the left factor on the high-order bits,
/// matching ket concatenation.
GateMatrix kron(const GateMatrix& a, const GateMatrix& b);

/// The 2x2 matrix of a one-qubit kind.
GateMatrix base_matrix(Gate::Kind kind);

/// SWAP assembled from Pauli algebra: (1 + Z(x)Z + X(x)X - Y(x)Y)/2 with
/// Y = XZ. Equals the permutation matrix exchanging |01> and |10>.
GateMatrix swap_via_paulis();

/// The pair P+ = (1 + Z(x)Z)/2, P- = (1 - Z(x)Z)/2. P+ fixes |00>,|11> and
/// annihilates the rest; P- is the complement. Not unitary; P^2 = P.
std::pair<GateMatrix, GateMatrix> pauli_projectors();

/// H on every one of qubits 0..n-1. On |x> this yields
/// 2^{-n/2} sum_z (-1)^{x.z} |z>.
Gate hadamard_all(int n);

bool is_unitary(const GateMatrix& m, double tol = kUnitaryTolerance);

}  // namespace qcsim
