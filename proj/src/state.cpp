#include "qcsim/state.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qcsim {

namespace {

void check_qubit_count(int n) {
    if (n < 0) throw std::invalid_argument("qubit count must be non-negative");
    if (n > kMaxQubits)
        throw std::invalid_argument("qubit count " + std::to_string(n) +
                                    " exceeds dense limit of " +
                                    std::to_string(kMaxQubits));
}

}  // namespace

StateVector::StateVector(int qubit_count) : qubit_count_(qubit_count) {
    check_qubit_count(qubit_count);
    amps_.assign(std::size_t{1} << qubit_count, Amplitude{0.0, 0.0});
    amps_[0] = Amplitude{1.0, 0.0};
}

StateVector StateVector::basis(std::uint64_t x, int qubit_count) {
    check_qubit_count(qubit_count);
    const std::size_t dim = std::size_t{1} << qubit_count;
    if (x >= dim)
        throw std::invalid_argument("basis index " + std::to_string(x) +
                                    " out of range for " +
                                    std::to_string(qubit_count) + " qubits");
    std::vector<Amplitude> amps(dim, Amplitude{0.0, 0.0});
    amps[x] = Amplitude{1.0, 0.0};
    return StateVector(qubit_count, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
    if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0)
        throw std::invalid_argument("amplitude count must be a power of two");
    int n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    check_qubit_count(n);
    for (const Amplitude& a : amps)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("amplitudes must be finite");
    return StateVector(n, std::move(amps));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const Amplitude& a : amps_) s += std::norm(a);
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

void StateVector::renormalize() {
    const double nrm = norm();
    if (nrm == 0.0) throw std::domain_error("cannot renormalize a zero state");
    for (Amplitude& a : amps_) a /= nrm;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const int n = a.qubit_count() + b.qubit_count();
    check_qubit_count(n);
    std::vector<Amplitude> out(std::size_t{1} << n);
    const std::size_t bdim = b.dim();
    for (std::size_t x = 0; x < a.dim(); ++x)
        for (std::size_t y = 0; y < bdim; ++y)
            out[x * bdim + y] = a.amp(x) * b.amp(y);
    return StateVector::from_amplitudes(std::move(out));
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol) {
    if (a.qubit_count() != b.qubit_count())
        throw std::invalid_argument("qubit counts differ: " +
                                    std::to_string(a.qubit_count()) + " vs " +
                                    std::to_string(b.qubit_count()));
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const double m = std::abs(b.amp(i));
        if (m > best) {
            best = m;
            k = i;
        }
    }
    if (best == 0.0) return a.norm() <= tol;  // b is the zero vector
    Amplitude c = a.amp(k) / b.amp(k);
    const double cm = std::abs(c);
    if (cm == 0.0) return false;
    c /= cm;  // keep it a pure phase
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (std::abs(a.amp(i) - c * b.amp(i)) > tol) return false;
    return true;
}

std::string bitstring_of(std::uint64_t x, int bits) {
    std::string s(static_cast<std::size_t>(bits), '0');
    for (int j = 0; j < bits; ++j)
        if ((x >> j) & 1u) s[static_cast<std::size_t>(bits - 1 - j)] = '1';
    return s;
}

std::string dump_state(const StateVector& s) {
    std::string out;
    char line[128];
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::snprintf(line, sizeof(line), "%zu\t%s\t%.15g\t%.15g\n", i,
                      bitstring_of(i, s.qubit_count()).c_str(),
                      s.amp(i).real(), s.amp(i).imag());
        out += line;
    }
    return out;
}

}  // namespace qcsim
