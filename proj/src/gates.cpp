#include "qcsim/gates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qcsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_wire(int q) {
    if (q < 0) throw std::invalid_argument("qubit id must be non-negative");
}

void check_distinct(const std::vector<int>& qs) {
    std::set<int> seen;
    for (int q : qs) {
        check_wire(q);
        if (!seen.insert(q).second)
            throw std::invalid_argument("duplicate qubit id " + std::to_string(q));
    }
}

bool is_one_qubit_kind(Gate::Kind k) {
    switch (k) {
        case Gate::Kind::X:
        case Gate::Kind::Z:
        case Gate::Kind::Y:
        case Gate::Kind::Yh:
        case Gate::Kind::H:
        case Gate::Kind::Identity:
            return true;
        default:
            return false;
    }
}

}  // namespace

Gate Gate::x(int q) { check_wire(q); return Gate(Kind::X, {q}); }
Gate Gate::z(int q) { check_wire(q); return Gate(Kind::Z, {q}); }
Gate Gate::y(int q) { check_wire(q); return Gate(Kind::Y, {q}); }
Gate Gate::yh(int q) { check_wire(q); return Gate(Kind::Yh, {q}); }
Gate Gate::h(int q) { check_wire(q); return Gate(Kind::H, {q}); }
Gate Gate::identity(int q) { check_wire(q); return Gate(Kind::Identity, {q}); }

Gate Gate::controlled(Gate inner, int control) {
    check_wire(control);
    const bool inner_1q =
        is_one_qubit_kind(inner.kind()) ||
        (inner.kind() == Kind::Unitary && inner.targets().size() == 1);
    if (!inner_1q)
        throw std::invalid_argument("controlled() takes a one-qubit inner gate");
    if (inner.targets()[0] == control)
        throw std::invalid_argument("control and target must be distinct");
    Gate g(Kind::Controlled, inner.targets());
    g.control_ = control;
    g.inner_ = std::make_shared<Gate>(std::move(inner));
    return g;
}

Gate Gate::cnot(int control, int target) { return controlled(x(target), control); }
Gate Gate::cz(int q1, int q2) { return controlled(z(q2), q1); }

Gate Gate::swap(int q1, int q2) {
    check_distinct({q1, q2});
    return Gate(Kind::Swap, {q1, q2});
}

Gate Gate::unitary(GateMatrix m, std::vector<int> targets) {
    check_distinct(targets);
    const std::size_t dim = std::size_t{1} << targets.size();
    if (m.rows() != static_cast<Eigen::Index>(dim) ||
        m.cols() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("matrix dimension does not match target count");
    if (!m.allFinite())
        throw std::invalid_argument("unitary matrix entries must be finite");
    if (!is_unitary(m, kUnitaryTolerance))
        throw std::invalid_argument("matrix is not unitary within tolerance");
    Gate g(Kind::Unitary, std::move(targets));
    g.matrix_ = std::make_shared<GateMatrix>(std::move(m));
    return g;
}

Gate hadamard_all(int n) {
    if (n < 1) throw std::invalid_argument("hadamard_all needs at least one qubit");
    std::vector<int> qs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) qs[static_cast<std::size_t>(j)] = j;
    return Gate(Gate::Kind::HadamardAll, std::move(qs));
}

std::vector<int> Gate::qubits() const {
    std::vector<int> qs = targets_;
    if (kind_ == Kind::Controlled) qs.push_back(control_);
    return qs;
}

int Gate::max_qubit() const {
    int m = control_;
    for (int q : targets_) m = std::max(m, q);
    return m;
}

bool is_unitary(const GateMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    GateMatrix d = m.adjoint() * m;
    d -= GateMatrix::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

GateMatrix base_matrix(Gate::Kind kind) {
    GateMatrix m(2, 2);
    switch (kind) {
        case Gate::Kind::X:
            m << 0, 1, 1, 0;
            break;
        case Gate::Kind::Z:
            m << 1, 0, 0, -1;
            break;
        case Gate::Kind::Y:  // XZ
            m << 0, -1, 1, 0;
            break;
        case Gate::Kind::Yh:  // iXZ
            m << Amplitude(0, 0), Amplitude(0, -1), Amplitude(0, 1), Amplitude(0, 0);
            break;
        case Gate::Kind::H:
            m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
            break;
        case Gate::Kind::Identity:
            m << 1, 0, 0, 1;
            break;
        default:
            throw std::invalid_argument("base_matrix: not a one-qubit kind");
    }
    return m;
}

GateMatrix kron(const GateMatrix& a, const GateMatrix& b) {
    GateMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

GateMatrix swap_via_paulis() {
    const GateMatrix one = GateMatrix::Identity(4, 4);
    const GateMatrix x = base_matrix(Gate::Kind::X);
    const GateMatrix z = base_matrix(Gate::Kind::Z);
    const GateMatrix y = x * z;
    return 0.5 * (one + kron(z, z) + kron(x, x) - kron(y, y));
}

std::pair<GateMatrix, GateMatrix> pauli_projectors() {
    const GateMatrix one = GateMatrix::Identity(4, 4);
    const GateMatrix z = base_matrix(Gate::Kind::Z);
    return {0.5 * (one + kron(z, z)), 0.5 * (one - kron(z, z))};
}

// ---------------------------------------------------------------------------
// Amplitude kernels

namespace {

void check_fits(const Gate& g, int n) {
    if (g.max_qubit() >= n)
        throw std::invalid_argument("gate touches qubit " +
                                    std::to_string(g.max_qubit()) +
                                    " but the state has only " +
                                    std::to_string(n) + " qubits");
}

// 2x2 butterfly over the pairs split by bit t.
void kernel_1q(StateVector& s, const GateMatrix& m, int t) {
    const std::size_t stride = std::size_t{1} << t;
    const std::size_t dim = s.dim();
    const Amplitude m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            const Amplitude a = s.amp(i);
            const Amplitude b = s.amp(i + stride);
            s.amp(i) = m00 * a + m01 * b;
            s.amp(i + stride) = m10 * a + m11 * b;
        }
}

// Same butterfly, only where the control bit is set.
void kernel_controlled_1q(StateVector& s, const GateMatrix& m, int c, int t) {
    const std::size_t stride = std::size_t{1} << t;
    const std::size_t cmask = std::size_t{1} << c;
    const std::size_t dim = s.dim();
    const Amplitude m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            if (!(i & cmask)) continue;
            const Amplitude a = s.amp(i);
            const Amplitude b = s.amp(i + stride);
            s.amp(i) = m00 * a + m01 * b;
            s.amp(i + stride) = m10 * a + m11 * b;
        }
}

void kernel_swap(StateVector& s, int q1, int q2) {
    const std::size_t m1 = std::size_t{1} << q1;
    const std::size_t m2 = std::size_t{1} << q2;
    const std::size_t dim = s.dim();
    for (std::size_t i = 0; i < dim; ++i)
        if ((i & m1) && !(i & m2)) std::swap(s.amp(i), s.amp(i ^ m1 ^ m2));
}

// Generic k-qubit matrix. targets are ket-order, so targets[0] carries the
// most significant local bit.
void kernel_kq(StateVector& s, const GateMatrix& m, const std::vector<int>& targets) {
    const int k = static_cast<int>(targets.size());
    const std::size_t kdim = std::size_t{1} << k;
    std::size_t tmask = 0;
    for (int q : targets) tmask |= std::size_t{1} << q;

    std::vector<std::size_t> scatter(kdim, 0);
    for (std::size_t l = 0; l < kdim; ++l) {
        std::size_t g = 0;
        for (int j = 0; j < k; ++j)
            if ((l >> (k - 1 - j)) & 1u)
                g |= std::size_t{1} << targets[static_cast<std::size_t>(j)];
        scatter[l] = g;
    }

    std::vector<Amplitude> v(kdim), w(kdim);
    const std::size_t dim = s.dim();
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & tmask) continue;
        for (std::size_t l = 0; l < kdim; ++l) v[l] = s.amp(base | scatter[l]);
        for (std::size_t r = 0; r < kdim; ++r) {
            Amplitude acc{0.0, 0.0};
            for (std::size_t l = 0; l < kdim; ++l)
                acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) * v[l];
            w[r] = acc;
        }
        for (std::size_t r = 0; r < kdim; ++r) s.amp(base | scatter[r]) = w[r];
    }
}

}  // namespace

void apply_in_place(const Gate& g, StateVector& s) {
    check_fits(g, s.qubit_count());
    switch (g.kind()) {
        case Gate::Kind::X:
        case Gate::Kind::Z:
        case Gate::Kind::Y:
        case Gate::Kind::Yh:
        case Gate::Kind::H:
            kernel_1q(s, base_matrix(g.kind()), g.targets()[0]);
            break;
        case Gate::Kind::Identity:
            break;
        case Gate::Kind::Controlled: {
            const Gate& in = g.inner();
            const GateMatrix m = in.kind() == Gate::Kind::Unitary
                                     ? in.unitary_matrix()
                                     : base_matrix(in.kind());
            kernel_controlled_1q(s, m, g.control(), g.targets()[0]);
            break;
        }
        case Gate::Kind::Swap:
            kernel_swap(s, g.targets()[0], g.targets()[1]);
            break;
        case Gate::Kind::Unitary:
            if (g.targets().size() == 1)
                kernel_1q(s, g.unitary_matrix(), g.targets()[0]);
            else
                kernel_kq(s, g.unitary_matrix(), g.targets());
            break;
        case Gate::Kind::HadamardAll:
            for (int q : g.targets()) kernel_1q(s, base_matrix(Gate::Kind::H), q);
            break;
    }
}

StateVector apply(const Gate& g, StateVector s) {
    apply_in_place(g, s);
    return s;
}

// ---------------------------------------------------------------------------
// Dense embedding, built column by column from index algebra.

GateMatrix matrix_of(const Gate& g, int n) {
    if (n < 1 || n > kMaxMatrixQubits)
        throw std::invalid_argument("matrix_of supports 1.." +
                                    std::to_string(kMaxMatrixQubits) + " qubits");
    check_fits(g, n);
    const std::size_t dim = std::size_t{1} << n;
    GateMatrix out = GateMatrix::Zero(static_cast<Eigen::Index>(dim),
                                      static_cast<Eigen::Index>(dim));

    auto col = [&](std::size_t x) -> Eigen::Index { return static_cast<Eigen::Index>(x); };

    switch (g.kind()) {
        case Gate::Kind::Identity:
            out.setIdentity();
            break;
        case Gate::Kind::X:
        case Gate::Kind::Z:
        case Gate::Kind::Y:
        case Gate::Kind::Yh:
        case Gate::Kind::H: {
            const GateMatrix m = base_matrix(g.kind());
            const std::size_t t = std::size_t{1} << g.targets()[0];
            for (std::size_t x = 0; x < dim; ++x) {
                const int b = (x & t) ? 1 : 0;
                for (int bp = 0; bp < 2; ++bp) {
                    const Amplitude v = m(bp, b);
                    if (v == Amplitude{0.0, 0.0}) continue;
                    const std::size_t row = bp ? (x | t) : (x & ~t);
                    out(col(row), col(x)) += v;
                }
            }
            break;
        }
        case Gate::Kind::Controlled: {
            const Gate& in = g.inner();
            const GateMatrix m = in.kind() == Gate::Kind::Unitary
                                     ? in.unitary_matrix()
                                     : base_matrix(in.kind());
            const std::size_t c = std::size_t{1} << g.control();
            const std::size_t t = std::size_t{1} << g.targets()[0];
            for (std::size_t x = 0; x < dim; ++x) {
                if (!(x & c)) {
                    out(col(x), col(x)) += 1.0;
                    continue;
                }
                const int b = (x & t) ? 1 : 0;
                for (int bp = 0; bp < 2; ++bp) {
                    const Amplitude v = m(bp, b);
                    if (v == Amplitude{0.0, 0.0}) continue;
                    const std::size_t row = bp ? (x | t) : (x & ~t);
                    out(col(row), col(x)) += v;
                }
            }
            break;
        }
        case Gate::Kind::Swap: {
            const std::size_t m1 = std::size_t{1} << g.targets()[0];
            const std::size_t m2 = std::size_t{1} << g.targets()[1];
            for (std::size_t x = 0; x < dim; ++x) {
                std::size_t row = x;
                const bool b1 = x & m1, b2 = x & m2;
                if (b1 != b2) row = x ^ m1 ^ m2;
                out(col(row), col(x)) = 1.0;
            }
            break;
        }
        case Gate::Kind::Unitary: {
            const GateMatrix& m = g.unitary_matrix();
            const std::vector<int>& ts = g.targets();
            const int k = static_cast<int>(ts.size());
            const std::size_t kdim = std::size_t{1} << k;
            for (std::size_t x = 0; x < dim; ++x) {
                std::size_t l = 0;
                for (int j = 0; j < k; ++j)
                    if ((x >> ts[static_cast<std::size_t>(j)]) & 1u)
                        l |= std::size_t{1} << (k - 1 - j);
                const std::size_t rest = [&] {
                    std::size_t r = x;
                    for (int q : ts) r &= ~(std::size_t{1} << q);
                    return r;
                }();
                for (std::size_t lp = 0; lp < kdim; ++lp) {
                    const Amplitude v = m(static_cast<Eigen::Index>(lp),
                                          static_cast<Eigen::Index>(l));
                    if (v == Amplitude{0.0, 0.0}) continue;
                    std::size_t row = rest;
                    for (int j = 0; j < k; ++j)
                        if ((lp >> (k - 1 - j)) & 1u)
                            row |= std::size_t{1} << ts[static_cast<std::size_t>(j)];
                    out(col(row), col(x)) += v;
                }
            }
            break;
        }
        case Gate::Kind::HadamardAll: {
            // Dense by nature: entry (z, x) = 2^{-k/2} (-1)^{popcount(x & z)}
            // over the target bits, identity elsewhere. Targets are 0..k-1.
            const int k = static_cast<int>(g.targets().size());
            const std::size_t kdim = std::size_t{1} << k;
            const double scale = std::pow(2.0, -0.5 * k);
            const std::size_t rests = dim / kdim;
            for (std::size_t r = 0; r < rests; ++r)
                for (std::size_t x = 0; x < kdim; ++x)
                    for (std::size_t z = 0; z < kdim; ++z) {
                        const int sign = std::popcount(x & z) & 1 ? -1 : 1;
                        out(col(r * kdim + z), col(r * kdim + x)) = sign * scale;
                    }
            break;
        }
    }
    return out;
}

}  // namespace qcsim
