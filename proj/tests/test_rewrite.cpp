#include <doctest.h>

#include <bit>
#include <cmath>

#include "qcsim/bv.hpp"
#include "qcsim/rewrite.hpp"
#include "test_util.hpp"

using namespace qcsim;
using namespace qcsim::test;

namespace {

Circuit circuit_of(int width, std::vector<CircuitOp> ops) {
    Circuit c;
    c.width = width;
    c.ops = std::move(ops);
    c.validate();
    return c;
}

GateOp h(int q) { return GateOp{"H", {q}, nullptr}; }
GateOp x(int q) { return GateOp{"X", {q}, nullptr}; }
GateOp z(int q) { return GateOp{"Z", {q}, nullptr}; }
GateOp cnot(int c, int t) { return GateOp{"CNOT", {c, t}, nullptr}; }
GateOp cz(int a, int b) { return GateOp{"CZ", {a, b}, nullptr}; }
GateOp swp(int a, int b) { return GateOp{"SWAP", {a, b}, nullptr}; }

bool is_cnot(const CircuitOp& op, int c, int t) {
    const auto* g = std::get_if<GateOp>(&op);
    return g && g->name == "CNOT" && g->qubits == std::vector<int>{c, t};
}

}  // namespace

TEST_SUITE_BEGIN("rewrite");

TEST_CASE("rewrite_step on the named windows") {
    SUBCASE("conjugate_cnot reverses the CNOT") {
        const Circuit before =
            circuit_of(2, {h(0), h(1), cnot(0, 1), h(0), h(1)});
        const Circuit after = rewrite_step(before, rule_by_name("conjugate_cnot"), 0);
        REQUIRE(after.ops.size() == 1);
        CHECK(is_cnot(after.ops[0], 1, 0));
        CHECK(equivalence_check(before, after, 1e-12));
    }
    SUBCASE("hh_cancel deletes the pair") {
        const Circuit before = circuit_of(1, {h(0), h(0)});
        const Circuit after = rewrite_step(before, rule_by_name("hh_cancel"), 0);
        CHECK(after.ops.empty());
    }
    SUBCASE("hxh_to_z") {
        const Circuit before = circuit_of(1, {h(0), x(0), h(0)});
        const Circuit after = rewrite_step(before, rule_by_name("hxh_to_z"), 0);
        REQUIRE(after.ops.size() == 1);
        CHECK(std::get<GateOp>(after.ops[0]).name == "Z");
        CHECK(equivalence_check(before, after, 1e-12));
    }
    SUBCASE("no match raises") {
        const Circuit c = circuit_of(1, {h(0), x(0)});
        CHECK_THROWS_WITH_AS(rewrite_step(c, rule_by_name("hh_cancel"), 0),
                             doctest::Contains("does not match"),
                             std::invalid_argument);
    }
    SUBCASE("windows may not cross into the measurement block") {
        Circuit c = circuit_of(1, {h(0)});
        c.ops.emplace_back(MeasureOp{{0}});
        CHECK_THROWS_AS(rewrite_step(c, rule_by_name("hh_cancel"), 0),
                        std::invalid_argument);
    }
}

TEST_CASE("every shipped rule passes its soundness certificate at width <= 4") {
    // For every concrete wire assignment, the matched window and its
    // replacement must be unitarily equal up to a global phase.
    const double tol = 1e-9;
    for (int w = 1; w <= 4; ++w) {
        for (int q = 0; q < w; ++q) {
            CHECK(equivalence_check(
                circuit_of(w, {h(q), h(q)}), circuit_of(w, {}), tol));
            CHECK(equivalence_check(
                rewrite_step(circuit_of(w, {h(q), x(q), h(q)}),
                             rule_by_name("hxh_to_z"), 0),
                circuit_of(w, {h(q), x(q), h(q)}), tol));
            CHECK(equivalence_check(
                rewrite_step(circuit_of(w, {h(q), z(q), h(q)}),
                             rule_by_name("hzh_to_x"), 0),
                circuit_of(w, {h(q), z(q), h(q)}), tol));
            // hh_insert at every position of a one-gate circuit
            for (std::size_t pos = 0; pos <= 1; ++pos) {
                const Circuit base = circuit_of(w, {x((q + 1) % w)});
                CHECK(equivalence_check(rewrite_step(base, hh_insert_rule(q), pos),
                                        base, tol));
            }
        }
        for (int c = 0; c < w; ++c)
            for (int t = 0; t < w; ++t) {
                if (c == t) continue;
                const Circuit win =
                    circuit_of(w, {h(c), h(t), cnot(c, t), h(c), h(t)});
                CHECK(equivalence_check(
                    win, rewrite_step(win, rule_by_name("conjugate_cnot"), 0), tol));
                // flanking H order is immaterial
                const Circuit win2 =
                    circuit_of(w, {h(t), h(c), cnot(c, t), h(t), h(c)});
                CHECK(equivalence_check(
                    win2, rewrite_step(win2, rule_by_name("conjugate_cnot"), 0), tol));

                const Circuit swin =
                    circuit_of(w, {swp(c, t), cnot(c, t), swp(c, t)});
                CHECK(equivalence_check(
                    swin, rewrite_step(swin, rule_by_name("swap_conjugation"), 0), tol));

                const Circuit zwin = circuit_of(w, {cz(c, t)});
                CHECK(equivalence_check(
                    zwin, rewrite_step(zwin, rule_by_name("cz_flip"), 0), tol));
            }
        // commute_disjoint over a small op menu
        if (w >= 3) {
            const std::vector<CircuitOp> menu = {h(0), x(1), cnot(1, 2), swp(0, 2),
                                                 cz(2, 1)};
            for (const CircuitOp& a : menu)
                for (const CircuitOp& b : menu) {
                    const Circuit pair = circuit_of(w, {a, b});
                    const std::span<const CircuitOp> window(pair.ops.data(), 2);
                    if (!rule_by_name("commute_disjoint").rewrite(window)) continue;
                    CHECK(equivalence_check(
                        pair,
                        rewrite_step(pair, rule_by_name("commute_disjoint"), 0), tol));
                }
        }
    }
}

TEST_CASE("rule soundness spot checks at width 8") {
    const double tol = 1e-9;
    const Circuit win = circuit_of(8, {h(7), h(3), cnot(7, 3), h(7), h(3)});
    CHECK(equivalence_check(
        win, rewrite_step(win, rule_by_name("conjugate_cnot"), 0), tol));
    const Circuit swin = circuit_of(8, {swp(2, 6), cnot(6, 2), swp(6, 2)});
    CHECK(equivalence_check(
        swin, rewrite_step(swin, rule_by_name("swap_conjugation"), 0), tol));
}

TEST_CASE("rule locality metadata matches what the rules touch") {
    CHECK(rule_by_name("conjugate_cnot").locality == RuleLocality::LocalConjugation);
    CHECK(rule_by_name("hh_cancel").locality == RuleLocality::LocalConjugation);
    CHECK(hh_insert_rule(0).locality == RuleLocality::LocalConjugation);
    CHECK(rule_by_name("swap_conjugation").locality ==
          RuleLocality::EntanglingConjugation);
    CHECK(rule_by_name("commute_disjoint").locality == RuleLocality::Structural);

    // the conjugating gates of conjugate_cnot act on one wire each; the
    // conjugating gates of swap_conjugation act on two
    const Circuit cwin = circuit_of(2, {h(0), h(1), cnot(0, 1), h(0), h(1)});
    for (std::size_t i : {0, 1, 3, 4})
        CHECK(op_qubits(cwin.ops[i]).size() == 1);
    const Circuit swin = circuit_of(2, {swp(0, 1), cnot(0, 1), swp(0, 1)});
    for (std::size_t i : {0, 2})
        CHECK(op_qubits(swin.ops[i]).size() == 2);
}

TEST_CASE("expand_oracle") {
    SUBCASE("one CNOT per set bit, most significant first") {
        const Circuit c = bv_circuit_with_hidden_string(5, 0b11010);
        const Circuit expanded = expand_oracle(c, 0b11010);
        // walls of six H's on both sides, bank in the middle
        REQUIRE(expanded.ops.size() == 6 + 3 + 6 + 1);
        CHECK(is_cnot(expanded.ops[6], 5, 0));   // bit 4 lives on wire 5
        CHECK(is_cnot(expanded.ops[7], 4, 0));   // bit 3 on wire 4
        CHECK(is_cnot(expanded.ops[8], 2, 0));   // bit 1 on wire 2
    }
    SUBCASE("a = 0 erases the marker") {
        const Circuit c = bv_circuit_with_hidden_string(3, 0);
        const Circuit expanded = expand_oracle(c, 0);
        CHECK(expanded.ops.size() == c.ops.size() - 1);
        for (const CircuitOp& op : expanded.ops)
            CHECK_FALSE(std::holds_alternative<OracleOp>(op));
    }
    SUBCASE("a single low bit gives one CNOT from the lowest input wire") {
        const Circuit c = bv_circuit_with_hidden_string(5, 0b00001);
        const Circuit expanded = expand_oracle(c, 0b00001);
        REQUIRE(expanded.ops.size() == 6 + 1 + 6 + 1);
        CHECK(is_cnot(expanded.ops[6], 1, 0));
    }
    SUBCASE("marker required") {
        const Circuit c = circuit_of(2, {h(0)});
        CHECK_THROWS_AS(expand_oracle(c, 0), std::invalid_argument);
    }
    SUBCASE("the bank equals the boxed unitary for every a at n <= 4") {
        for (int n = 1; n <= 4; ++n)
            for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
                Circuit boxed;
                boxed.width = n + 1;
                {
                    OracleOp o;
                    for (int j = 0; j < n; ++j) o.inputs.push_back(n - j);
                    o.output = 0;
                    o.hidden_string = a;
                    boxed.ops.emplace_back(std::move(o));
                }
                const Circuit bank = expand_oracle(boxed, a);
                CHECK(equivalence_check(boxed, bank, 1e-12));
            }
    }
}

TEST_CASE("bv_simplify drives the one-query circuit to its reversed form") {
    SUBCASE("exhaustive over n <= 4") {
        for (int n = 1; n <= 4; ++n) {
            for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
                const Circuit original = bv_circuit_with_hidden_string(n, a);
                const auto [simplified, trace] = bv_simplify(original);

                // final shape: one output-controlled CNOT per set bit, then
                // the untouched readout
                const int bits = std::popcount(a);
                REQUIRE(simplified.ops.size() ==
                        static_cast<std::size_t>(bits) + 1);
                int seen = 0;
                for (int j = n - 1; j >= 0; --j) {
                    if (!((a >> j) & 1u)) continue;
                    CHECK(is_cnot(simplified.ops[static_cast<std::size_t>(seen)], 0,
                                  j + 1));
                    ++seen;
                }
                CHECK(std::holds_alternative<MeasureOp>(simplified.ops.back()));

                // unitarily the same circuit
                Circuit u1 = original, u2 = simplified;
                u1.ops.pop_back();
                u2.ops.pop_back();
                CHECK(equivalence_check(u1, u2, 1e-9));

                // and it still reads out a, with certainty
                RandomSource rng(17);
                const SimulationResult sim =
                    simulate(simplified, StateVector::basis(1, n + 1), rng);
                CHECK(sim.records.front().outcome == a);
                CHECK(sim.records.front().probability_at_draw == 1.0);

                // the trace is a consistent chain of known rules
                std::size_t len = original.ops.size();
                for (const RewriteStep& s : trace) {
                    CHECK(s.before_len == len);
                    len = s.after_len;
                    CHECK((s.rule == "expand_oracle" || s.rule == "hh_insert" ||
                           s.rule == "hh_cancel" || s.rule == "commute_disjoint" ||
                           s.rule == "conjugate_cnot"));
                }
                CHECK(len == simplified.ops.size());

                // one conjugation per set bit
                std::size_t conj = 0;
                for (const RewriteStep& s : trace)
                    if (s.rule == "conjugate_cnot") ++conj;
                CHECK(conj == static_cast<std::size_t>(bits));
            }
        }
    }
    SUBCASE("accepts the pre-expanded form too") {
        const Circuit original = bv_circuit_with_hidden_string(3, 0b110);
        const Circuit expanded = expand_oracle(original, 0b110);
        const auto [simplified, trace] = bv_simplify(expanded);
        Circuit u1 = expanded, u2 = simplified;
        u1.ops.pop_back();
        u2.ops.pop_back();
        CHECK(equivalence_check(u1, u2, 1e-9));
        for (const RewriteStep& s : trace) CHECK(s.rule != "expand_oracle");
    }
    SUBCASE("a boxed marker with no hidden string cannot be derived") {
        CHECK_THROWS_WITH_AS(bv_simplify(bv_circuit(3)),
                             doctest::Contains("hidden string"),
                             std::invalid_argument);
    }
    SUBCASE("other shapes are rejected") {
        const Circuit c = circuit_of(2, {h(0), cnot(0, 1)});
        CHECK_THROWS_WITH_AS(bv_simplify(c), doctest::Contains("expected shape"),
                             std::invalid_argument);
    }
}

TEST_CASE("simplify_local reaches a fixpoint of the reducing rules") {
    const Circuit c = circuit_of(2, {h(0), h(0), h(1), x(1), h(1), z(0)});
    const auto [simplified, trace] = simplify_local(c);
    REQUIRE(simplified.ops.size() == 2);
    CHECK(std::get<GateOp>(simplified.ops[0]).name == "Z");
    CHECK(std::get<GateOp>(simplified.ops[1]).name == "Z");
    CHECK(equivalence_check(c, simplified, 1e-9));
    const auto [again, trace2] = simplify_local(simplified);
    CHECK(trace2.empty());
}

TEST_CASE("equivalence_check") {
    SUBCASE("Hadamard conjugation of a CNOT, as whole circuits") {
        const Circuit lhs = circuit_of(2, {h(0), h(1), cnot(0, 1), h(0), h(1)});
        const Circuit rhs = circuit_of(2, {cnot(1, 0)});
        CHECK(equivalence_check(lhs, rhs, 1e-12));
    }
    SUBCASE("SWAP conjugation of a CNOT") {
        const Circuit lhs = circuit_of(2, {swp(0, 1), cnot(0, 1), swp(0, 1)});
        const Circuit rhs = circuit_of(2, {cnot(1, 0)});
        CHECK(equivalence_check(lhs, rhs, 1e-12));
    }
    SUBCASE("X and Z are not the same gate") {
        CHECK_FALSE(equivalence_check(circuit_of(1, {x(0)}), circuit_of(1, {z(0)}),
                                      1e-9));
    }
    SUBCASE("a pure global phase is forgiven") {
        // YH = i XZ: same circuit up to the factor i
        const Circuit lhs = circuit_of(1, {GateOp{"YH", {0}, nullptr}});
        const Circuit rhs =
            circuit_of(1, {GateOp{"X", {0}, nullptr}, GateOp{"Z", {0}, nullptr}});
        CHECK(equivalence_check(lhs, rhs, 1e-12));
        CHECK(circuit_deviation(lhs, rhs) < 1e-15);
    }
    SUBCASE("width mismatch throws") {
        CHECK_THROWS_AS(
            equivalence_check(circuit_of(1, {x(0)}), circuit_of(2, {x(0)}), 1e-9),
            std::invalid_argument);
    }
    SUBCASE("measurements are rejected") {
        Circuit c = circuit_of(1, {x(0)});
        c.ops.emplace_back(MeasureOp{{0}});
        CHECK_THROWS_AS(equivalence_check(c, c, 1e-9), std::invalid_argument);
    }
    SUBCASE("width beyond the dense limit is rejected") {
        Circuit big;
        big.width = kMaxEquivalenceWidth + 1;
        big.ops = {x(0)};
        CHECK_THROWS_AS(equivalence_check(big, big, 1e-9), std::invalid_argument);
    }
}

TEST_CASE("trace serialization is one JSON object per line") {
    const auto [simplified, trace] = bv_simplify(bv_circuit_with_hidden_string(2, 0b11));
    const std::string lines = trace_to_json_lines(trace);
    CHECK(std::count(lines.begin(), lines.end(), '\n') ==
          static_cast<std::ptrdiff_t>(trace.size()));
    CHECK(lines.find("\"rule\":\"conjugate_cnot\"") != std::string::npos);
    CHECK(lines.find("\"before_len\"") != std::string::npos);
}

TEST_SUITE_END();
