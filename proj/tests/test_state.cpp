#include <doctest.h>

#include <cmath>
#include <complex>

#include "qcsim/gates.hpp"
#include "qcsim/state.hpp"
#include "test_util.hpp"

using namespace qcsim;
using qcsim::test::random_state;

TEST_SUITE_BEGIN("state");

TEST_CASE("basis_state places the single unit amplitude") {
    SUBCASE("|101> = index 5 of 3 qubits") {
        const StateVector s = StateVector::basis(5, 3);
        CHECK(s.dim() == 8);
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(s.amp(i) == (i == 5 ? Amplitude{1, 0} : Amplitude{0, 0}));
        // and it is the literal product |1>|0>|1>
        const StateVector prod =
            tensor(tensor(StateVector::basis(1, 1), StateVector::basis(0, 1)),
                   StateVector::basis(1, 1));
        CHECK(test::max_amp_diff(s, prod) == 0.0);
    }
    SUBCASE("|0> on one qubit is (1, 0)") {
        const StateVector s = StateVector::basis(0, 1);
        CHECK(s.amp(0) == Amplitude{1, 0});
        CHECK(s.amp(1) == Amplitude{0, 0});
    }
    SUBCASE("|3>_2 = |1>|1>") {
        const StateVector s = StateVector::basis(3, 2);
        const StateVector prod = tensor(StateVector::basis(1, 1), StateVector::basis(1, 1));
        CHECK(s.amp(3) == Amplitude{1, 0});
        CHECK(test::max_amp_diff(s, prod) == 0.0);
    }
    SUBCASE("index out of range is rejected") {
        CHECK_THROWS_AS(StateVector::basis(8, 3), std::invalid_argument);
        CHECK_THROWS_AS(StateVector::basis(2, 1), std::invalid_argument);
    }
}

TEST_CASE("basis states factor into per-qubit tensor products exhaustively") {
    for (int n = 1; n <= 8; ++n) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            StateVector prod = StateVector::basis((x >> (n - 1)) & 1u, 1);
            for (int j = n - 2; j >= 0; --j)
                prod = tensor(prod, StateVector::basis((x >> j) & 1u, 1));
            CHECK(test::max_amp_diff(StateVector::basis(x, n), prod) == 0.0);
        }
    }
}

TEST_CASE("tensor layout and bilinearity") {
    SUBCASE("|0> tensor |1> = |01> = index 1") {
        const StateVector s = tensor(StateVector::basis(0, 1), StateVector::basis(1, 1));
        CHECK(s.qubit_count() == 2);
        CHECK(s.amp(1) == Amplitude{1, 0});
    }
    SUBCASE("empty factor is the identity") {
        RandomSource rng(7);
        const StateVector psi = random_state(3, rng);
        const StateVector empty;  // 0-qubit [1]
        CHECK(test::max_amp_diff(tensor(psi, empty), psi) == 0.0);
        CHECK(test::max_amp_diff(tensor(empty, psi), psi) == 0.0);
    }
    SUBCASE("(a|0> + b|1>) tensor |0> spreads as (a, 0, b, 0)") {
        const Amplitude a{0.6, 0.0}, b{0.0, 0.8};
        const StateVector left = StateVector::from_amplitudes({a, b});
        const StateVector s = tensor(left, StateVector::basis(0, 1));
        CHECK(s.amp(0) == a);
        CHECK(s.amp(1) == Amplitude{0, 0});
        CHECK(s.amp(2) == b);
        CHECK(s.amp(3) == Amplitude{0, 0});
    }
}

TEST_CASE("tensor preserves norms") {
    RandomSource rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const StateVector a = random_state(1 + static_cast<int>(rng.next_u64() % 4), rng);
        const StateVector b = random_state(1 + static_cast<int>(rng.next_u64() % 4), rng);
        CHECK(std::abs(tensor(a, b).norm() - a.norm() * b.norm()) < 1e-12);
    }
}

TEST_CASE("equal_up_to_global_phase") {
    const double tol = 1e-12;
    SUBCASE("|0> matches -|0>") {
        const StateVector a = StateVector::basis(0, 1);
        const StateVector b = StateVector::from_amplitudes({{-1, 0}, {0, 0}});
        CHECK(equal_up_to_global_phase(a, b, tol));
    }
    SUBCASE("orthogonal basis states differ") {
        CHECK_FALSE(equal_up_to_global_phase(StateVector::basis(0, 1),
                                             StateVector::basis(1, 1), tol));
    }
    SUBCASE("H|0> matches its negation, phase -1") {
        const StateVector a = apply(Gate::h(0), StateVector::basis(0, 1));
        const double r = -1.0 / std::sqrt(2.0);
        const StateVector b = StateVector::from_amplitudes({{r, 0}, {r, 0}});
        CHECK(equal_up_to_global_phase(a, b, tol));
        // direct arithmetic: a = (1, 1)/sqrt(2), b = -(1, 1)/sqrt(2), c = -1
        CHECK(std::abs(a.amp(0) - Amplitude{-r, 0}) < tol);
    }
    SUBCASE("mismatched qubit counts are a domain error") {
        CHECK_THROWS_AS(equal_up_to_global_phase(StateVector::basis(0, 1),
                                                 StateVector::basis(0, 2), tol),
                        std::invalid_argument);
    }
}

TEST_CASE("equal_up_to_global_phase is an equivalence relation on samples") {
    const double tol = 1e-10;
    RandomSource rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector s = random_state(3, rng);
        // two random phase copies
        const double t1 = rng.next_uniform() * 2.0 * M_PI;
        const double t2 = rng.next_uniform() * 2.0 * M_PI;
        auto phased = [&](double t) {
            std::vector<Amplitude> v(s.amplitudes().begin(), s.amplitudes().end());
            const Amplitude c{std::cos(t), std::sin(t)};
            for (Amplitude& a : v) a *= c;
            return StateVector::from_amplitudes(std::move(v));
        };
        const StateVector p1 = phased(t1), p2 = phased(t2);
        CHECK(equal_up_to_global_phase(s, s, tol));              // reflexive
        CHECK(equal_up_to_global_phase(s, p1, tol));             // symmetric pair
        CHECK(equal_up_to_global_phase(p1, s, tol));
        CHECK(equal_up_to_global_phase(s, p1, tol));             // transitive triple
        CHECK(equal_up_to_global_phase(p1, p2, tol));
        CHECK(equal_up_to_global_phase(s, p2, tol));
    }
}

TEST_CASE("from_amplitudes validates shape and finiteness") {
    CHECK_THROWS_AS(StateVector::from_amplitudes({{1, 0}, {0, 0}, {0, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StateVector::from_amplitudes({}), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(StateVector::from_amplitudes({{inf, 0}, {0, 0}}),
                    std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(StateVector::from_amplitudes({{0, nan}, {0, 0}}),
                    std::invalid_argument);
}

TEST_CASE("dump format: index, bitstring, re, im") {
    const StateVector s = StateVector::basis(2, 2);
    CHECK(dump_state(s) == "0\t00\t0\t0\n1\t01\t0\t0\n2\t10\t1\t0\n3\t11\t0\t0\n");
    CHECK(bitstring_of(5, 3) == "101");
    CHECK(bitstring_of(0, 4) == "0000");
    // 12+ significant digits survive
    const StateVector h = apply(Gate::h(0), StateVector::basis(0, 1));
    CHECK(dump_state(h).find("0.707106781186547") != std::string::npos);
}

TEST_SUITE_END();
