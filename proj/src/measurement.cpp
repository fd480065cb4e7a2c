#include "qcsim/measurement.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qcsim/gates.hpp"

namespace qcsim {

namespace {

void check_normalized(const StateVector& s) {
    if (!s.is_normalized(kNormTolerance))
        throw std::domain_error("state is not normalized (|. |^2 - 1| > 1e-10)");
}

void check_qubit(const StateVector& s, int q) {
    if (q < 0 || q >= s.qubit_count())
        throw std::invalid_argument("qubit " + std::to_string(q) +
                                    " out of range for " +
                                    std::to_string(s.qubit_count()) + " qubits");
}

// Index with bit value b spliced in at position q; j supplies the remaining
// bits (low bits of j below q, high bits above).
std::size_t splice_bit(std::size_t j, int q, int b) {
    const std::size_t low = j & ((std::size_t{1} << q) - 1);
    const std::size_t high = (j >> q) << (q + 1);
    return high | (static_cast<std::size_t>(b) << q) | low;
}

}  // namespace

MeasurementRecord measure_all(const StateVector& s, RandomSource& rng) {
    check_normalized(s);
    const double u = rng.next_uniform();
    const std::size_t dim = s.dim();
    double cdf = 0.0;
    std::size_t chosen = dim;  // sentinel
    std::size_t last_nonzero = 0;
    double p_chosen = 0.0, p_last = 0.0;
    for (std::size_t x = 0; x < dim; ++x) {
        const double p = std::norm(s.amp(x));
        if (p > 0.0) {
            last_nonzero = x;
            p_last = p;
        }
        cdf += p;
        if (u < cdf) {
            chosen = x;
            p_chosen = p;
            break;
        }
    }
    if (chosen == dim) {  // cdf rounded short of u; clamp to the top support
        chosen = last_nonzero;
        p_chosen = p_last;
    }
    return MeasurementRecord{chosen, s.qubit_count(), p_chosen,
                             StateVector::basis(chosen, s.qubit_count())};
}

SingleQubitSplit split_on_qubit(const StateVector& s, int qubit) {
    check_normalized(s);
    check_qubit(s, qubit);
    const std::size_t dim = s.dim();
    const std::size_t qmask = std::size_t{1} << qubit;

    double p0 = 0.0, p1 = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        ((i & qmask) ? p1 : p0) += std::norm(s.amp(i));

    SingleQubitSplit out;
    out.coeff0 = std::sqrt(p0);
    out.coeff1 = std::sqrt(p1);
    const std::size_t half = dim / 2;
    for (int b = 0; b < 2; ++b) {
        const double c = b ? out.coeff1 : out.coeff0;
        if (c == 0.0) continue;
        std::vector<Amplitude> phi(half);
        for (std::size_t j = 0; j < half; ++j)
            phi[j] = s.amp(splice_bit(j, qubit, b)) / c;
        auto& slot = b ? out.phi1 : out.phi0;
        slot = StateVector::from_amplitudes(std::move(phi));
    }
    return out;
}

MeasurementRecord measure_one(const StateVector& s, int qubit, RandomSource& rng) {
    SingleQubitSplit split = split_on_qubit(s, qubit);  // validates inputs
    const double p0 = split.coeff0 * split.coeff0;
    const double p1 = split.coeff1 * split.coeff1;
    const double u = rng.next_uniform();

    int x;
    if (p1 == 0.0)
        x = 0;
    else if (p0 == 0.0)
        x = 1;
    else
        x = (u < p0) ? 0 : 1;

    const int n = s.qubit_count();
    if (n == 1) {
        // Nothing is left unmeasured: full Born collapse, residual phase dropped.
        return MeasurementRecord{static_cast<std::uint64_t>(x), 1, x ? p1 : p0,
                                 StateVector::basis(static_cast<std::uint64_t>(x), 1)};
    }

    const StateVector& phi = x ? *split.phi1 : *split.phi0;
    std::vector<Amplitude> post(s.dim(), Amplitude{0.0, 0.0});
    for (std::size_t j = 0; j < phi.dim(); ++j)
        post[splice_bit(j, qubit, x)] = phi.amp(j);
    return MeasurementRecord{static_cast<std::uint64_t>(x), 1, x ? p1 : p0,
                             StateVector::from_amplitudes(std::move(post))};
}

MeasurementRecord measure_all_via_singles(const StateVector& s, RandomSource& rng) {
    check_normalized(s);
    const int n = s.qubit_count();
    StateVector cur = s;
    std::uint64_t outcome = 0;
    double joint = 1.0;
    for (int q = n - 1; q >= 0; --q) {
        MeasurementRecord r = measure_one(cur, q, rng);
        outcome |= r.outcome << q;
        joint *= r.probability_at_draw;
        cur = std::move(r.post_state);
    }
    // cur is |outcome> up to a unit phase; collapse discards that phase.
    return MeasurementRecord{outcome, n, joint, StateVector::basis(outcome, n)};
}

std::vector<double> exact_distribution(const StateVector& s) {
    check_normalized(s);
    std::vector<double> p(s.dim());
    for (std::size_t x = 0; x < s.dim(); ++x) p[x] = std::norm(s.amp(x));
    return p;
}

StateVector prepare_zero(const StateVector& s, RandomSource& rng) {
    if (s.qubit_count() != 1)
        throw std::invalid_argument("prepare_zero acts on a single qubit");
    MeasurementRecord r = measure_one(s, 0, rng);
    StateVector out = std::move(r.post_state);
    if (r.outcome == 1) apply_in_place(Gate::x(0), out);
    return out;
}

std::string format_record(const MeasurementRecord& r) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "outcome=%s p=%.15g",
                  bitstring_of(r.outcome, r.bit_count).c_str(),
                  r.probability_at_draw);
    return buf;
}

}  // namespace qcsim
