#include "qcsim/rewrite.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include <nlohmann/json.hpp>

namespace qcsim {

namespace {

using OpList = std::vector<CircuitOp>;
using Window = std::span<const CircuitOp>;
using Replacement = std::optional<OpList>;

const GateOp* as_named(const CircuitOp& op, const char* name) {
    const auto* g = std::get_if<GateOp>(&op);
    return (g && g->name == name) ? g : nullptr;
}

bool same_pair(int a1, int a2, int b1, int b2) {
    return (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
}

GateOp h_op(int q) { return GateOp{"H", {q}, nullptr}; }
GateOp cnot_op(int c, int t) { return GateOp{"CNOT", {c, t}, nullptr}; }

Replacement match_hh_cancel(Window w) {
    const GateOp* h1 = as_named(w[0], "H");
    const GateOp* h2 = as_named(w[1], "H");
    if (h1 && h2 && h1->qubits == h2->qubits) return OpList{};
    return std::nullopt;
}

Replacement match_sandwich(Window w, const char* meat, const char* result) {
    const GateOp* h1 = as_named(w[0], "H");
    const GateOp* mid = as_named(w[1], meat);
    const GateOp* h2 = as_named(w[2], "H");
    if (h1 && mid && h2 && h1->qubits == mid->qubits && mid->qubits == h2->qubits)
        return OpList{GateOp{result, mid->qubits, nullptr}};
    return std::nullopt;
}

Replacement match_conjugate_cnot(Window w) {
    const GateOp* h1 = as_named(w[0], "H");
    const GateOp* h2 = as_named(w[1], "H");
    const GateOp* cx = as_named(w[2], "CNOT");
    const GateOp* h3 = as_named(w[3], "H");
    const GateOp* h4 = as_named(w[4], "H");
    if (!h1 || !h2 || !cx || !h3 || !h4) return std::nullopt;
    const int c = cx->qubits[0], t = cx->qubits[1];
    if (!same_pair(h1->qubits[0], h2->qubits[0], c, t)) return std::nullopt;
    if (!same_pair(h3->qubits[0], h4->qubits[0], c, t)) return std::nullopt;
    return OpList{cnot_op(t, c)};
}

Replacement match_swap_conjugation(Window w) {
    const GateOp* s1 = as_named(w[0], "SWAP");
    const GateOp* cx = as_named(w[1], "CNOT");
    const GateOp* s2 = as_named(w[2], "SWAP");
    if (!s1 || !cx || !s2) return std::nullopt;
    const int c = cx->qubits[0], t = cx->qubits[1];
    if (!same_pair(s1->qubits[0], s1->qubits[1], c, t)) return std::nullopt;
    if (!same_pair(s2->qubits[0], s2->qubits[1], c, t)) return std::nullopt;
    return OpList{cnot_op(t, c)};
}

Replacement match_cz_flip(Window w) {
    if (const GateOp* cz = as_named(w[0], "CZ"))
        return OpList{GateOp{"CZ", {cz->qubits[1], cz->qubits[0]}, nullptr}};
    return std::nullopt;
}

Replacement match_commute_disjoint(Window w) {
    if (std::holds_alternative<MeasureOp>(w[0]) ||
        std::holds_alternative<MeasureOp>(w[1]))
        return std::nullopt;
    const std::vector<int> qa = op_qubits(w[0]);
    for (int q : op_qubits(w[1]))
        if (std::find(qa.begin(), qa.end(), q) != qa.end()) return std::nullopt;
    return OpList{w[1], w[0]};
}

}  // namespace

const std::vector<RewriteRule>& standard_rules() {
    static const std::vector<RewriteRule> rules = {
        {"hh_cancel", RuleLocality::LocalConjugation, 2, match_hh_cancel},
        {"hxh_to_z", RuleLocality::LocalConjugation, 3,
         [](Window w) { return match_sandwich(w, "X", "Z"); }},
        {"hzh_to_x", RuleLocality::LocalConjugation, 3,
         [](Window w) { return match_sandwich(w, "Z", "X"); }},
        {"conjugate_cnot", RuleLocality::LocalConjugation, 5, match_conjugate_cnot},
        {"swap_conjugation", RuleLocality::EntanglingConjugation, 3,
         match_swap_conjugation},
        {"cz_flip", RuleLocality::Structural, 1, match_cz_flip},
        {"commute_disjoint", RuleLocality::Structural, 2, match_commute_disjoint},
    };
    return rules;
}

const RewriteRule& rule_by_name(std::string_view name) {
    for (const RewriteRule& r : standard_rules())
        if (r.name == name) return r;
    throw std::invalid_argument("unknown rewrite rule \"" + std::string(name) + "\"");
}

RewriteRule hh_insert_rule(int q) {
    return RewriteRule{"hh_insert", RuleLocality::LocalConjugation, 0,
                       [q](Window) -> Replacement {
                           return OpList{h_op(q), h_op(q)};
                       }};
}

Circuit rewrite_step(const Circuit& c, const RewriteRule& rule, std::size_t position) {
    const std::size_t prefix = c.unitary_prefix_length();
    if (position + rule.window > prefix || position > prefix)
        throw std::invalid_argument("rule " + rule.name +
                                    " window leaves the unitary prefix at position " +
                                    std::to_string(position));
    const Window w(c.ops.data() + position, rule.window);
    Replacement repl = rule.rewrite(w);
    if (!repl)
        throw std::invalid_argument("rule " + rule.name +
                                    " does not match at position " +
                                    std::to_string(position));
    Circuit out;
    out.width = c.width;
    out.ops.reserve(c.ops.size() - rule.window + repl->size());
    out.ops.insert(out.ops.end(), c.ops.begin(),
                   c.ops.begin() + static_cast<std::ptrdiff_t>(position));
    out.ops.insert(out.ops.end(), repl->begin(), repl->end());
    out.ops.insert(out.ops.end(),
                   c.ops.begin() + static_cast<std::ptrdiff_t>(position + rule.window),
                   c.ops.end());
    out.validate();
    return out;
}

Circuit expand_oracle(const Circuit& c, std::uint64_t a) {
    std::size_t pos = c.ops.size();
    for (std::size_t i = 0; i < c.ops.size(); ++i)
        if (std::holds_alternative<OracleOp>(c.ops[i])) {
            pos = i;
            break;
        }
    if (pos == c.ops.size())
        throw std::invalid_argument("circuit has no oracle marker to expand");
    const auto& o = std::get<OracleOp>(c.ops[pos]);
    const int n = static_cast<int>(o.inputs.size());
    if (n < 64 && (a >> n) != 0)
        throw std::invalid_argument("hidden string does not fit the oracle inputs");

    Circuit out;
    out.width = c.width;
    out.ops.insert(out.ops.end(), c.ops.begin(),
                   c.ops.begin() + static_cast<std::ptrdiff_t>(pos));
    for (int j = n - 1; j >= 0; --j)  // most significant bit first
        if ((a >> j) & 1u)
            out.ops.emplace_back(cnot_op(o.inputs[static_cast<std::size_t>(n - 1 - j)],
                                         o.output));
    out.ops.insert(out.ops.end(),
                   c.ops.begin() + static_cast<std::ptrdiff_t>(pos + 1), c.ops.end());
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// The guided derivation for the one-query circuit.

namespace {

class TracedCircuit {
public:
    explicit TracedCircuit(Circuit c) : circ_(std::move(c)) {}

    const Circuit& circuit() const { return circ_; }
    const std::vector<CircuitOp>& ops() const { return circ_.ops; }
    std::vector<RewriteStep>&& take_trace() { return std::move(trace_); }

    void apply(const RewriteRule& rule, std::size_t pos) {
        const std::size_t before = circ_.ops.size();
        circ_ = rewrite_step(circ_, rule, pos);
        trace_.push_back(RewriteStep{rule.name, pos, before, circ_.ops.size()});
    }

    void record_expand(std::uint64_t a) {
        std::size_t pos = 0;
        while (pos < circ_.ops.size() &&
               !std::holds_alternative<OracleOp>(circ_.ops[pos]))
            ++pos;
        const std::size_t before = circ_.ops.size();
        circ_ = expand_oracle(circ_, a);
        trace_.push_back(RewriteStep{"expand_oracle", pos, before, circ_.ops.size()});
    }

    // Moves the op at `from` to sit immediately before `to` (from < to),
    // one disjoint-commute at a time. Returns its final index.
    std::size_t move_right_to(std::size_t from, std::size_t to) {
        while (from + 1 < to) {
            apply(rule_by_name("commute_disjoint"), from);
            ++from;
        }
        return from;
    }

    // Moves the op at `from` leftward until it sits at index `to` (to < from).
    std::size_t move_left_to(std::size_t from, std::size_t to) {
        while (from > to) {
            apply(rule_by_name("commute_disjoint"), from - 1);
            --from;
        }
        return from;
    }

private:
    Circuit circ_;
    std::vector<RewriteStep> trace_;
};

bool is_h_on(const CircuitOp& op, int q) {
    const GateOp* g = as_named(op, "H");
    return g && g->qubits[0] == q;
}

// First op at index > from touching q, or npos.
std::size_t next_touching(const OpList& ops, std::size_t from, int q) {
    for (std::size_t i = from + 1; i < ops.size(); ++i)
        if (op_touches(ops[i], q)) return i;
    return ops.size();
}

// Last op at index < from touching q, or npos (= ops.size()).
std::size_t prev_touching(const OpList& ops, std::size_t from, int q) {
    for (std::size_t i = from; i-- > 0;)
        if (op_touches(ops[i], q)) return i;
    return ops.size();
}

std::size_t find_cnot_targeting(const OpList& ops, int target) {
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (const GateOp* g = as_named(ops[i], "CNOT"))
            if (g->qubits[1] == target) return i;
    return ops.size();
}

[[noreturn]] void bad_shape(const std::string& why) {
    throw std::invalid_argument("not a one-query circuit in the expected shape: " + why);
}

// Checks for [H wall][CNOT bank or oracle][H wall][optional readout] and
// returns the bank's common target wire, or -1 when the bank is empty.
int checked_output_wire(const Circuit& c) {
    const std::size_t prefix = c.unitary_prefix_length();
    const std::size_t wall = static_cast<std::size_t>(c.width);
    if (prefix < 2 * wall) bad_shape("too few ops for two Hadamard walls");

    auto check_wall = [&](std::size_t begin) {
        std::set<int> seen;
        for (std::size_t i = begin; i < begin + wall; ++i) {
            const GateOp* g = as_named(c.ops[i], "H");
            if (!g) bad_shape("Hadamard wall interrupted");
            if (!seen.insert(g->qubits[0]).second) bad_shape("wall repeats a wire");
        }
    };
    check_wall(0);
    check_wall(prefix - wall);

    int out_wire = -1;
    std::set<int> controls;
    for (std::size_t i = wall; i < prefix - wall; ++i) {
        if (std::holds_alternative<OracleOp>(c.ops[i])) {
            if (prefix - 2 * wall != 1) bad_shape("oracle must sit alone between walls");
            return std::get<OracleOp>(c.ops[i]).output;
        }
        const GateOp* g = as_named(c.ops[i], "CNOT");
        if (!g) bad_shape("middle section holds a non-CNOT gate");
        if (out_wire == -1) out_wire = g->qubits[1];
        if (g->qubits[1] != out_wire) bad_shape("CNOT bank targets differ");
        if (!controls.insert(g->qubits[0]).second) bad_shape("CNOT bank repeats a control");
    }
    return out_wire;
}

}  // namespace

std::pair<Circuit, std::vector<RewriteStep>> bv_simplify(const Circuit& c) {
    c.validate();
    const int out_wire_probe = checked_output_wire(c);
    TracedCircuit tc(c);

    // Step 1: open the black box if it is still boxed.
    bool has_marker = false;
    std::optional<std::uint64_t> hidden;
    for (const CircuitOp& op : c.ops)
        if (const auto* o = std::get_if<OracleOp>(&op)) {
            has_marker = true;
            hidden = o->hidden_string;
        }
    if (has_marker) {
        if (!hidden)
            throw std::invalid_argument(
                "oracle marker carries no hidden string; bind one before simplifying");
        tc.record_expand(*hidden);
    }

    // Step 2: conjugate each CNOT left to right. Flanking H's come from the
    // walls when free and are inserted as identity pairs when another CNOT
    // blocks the path.
    const RewriteRule& conjugate = rule_by_name("conjugate_cnot");
    const RewriteRule& cancel = rule_by_name("hh_cancel");
    const int out = out_wire_probe;
    while (out != -1) {
        std::size_t cpos = find_cnot_targeting(tc.ops(), out);
        if (cpos == tc.ops().size()) break;
        const int ctrl = std::get<GateOp>(tc.ops()[cpos]).qubits[0];

        // Secure an H after the CNOT on both wires, inserting when blocked.
        // Insertion at cpos+1 leaves the CNOT where it is.
        for (int q : {ctrl, out}) {
            const std::size_t nxt = next_touching(tc.ops(), cpos, q);
            if (nxt == tc.ops().size() || !is_h_on(tc.ops()[nxt], q))
                tc.apply(hh_insert_rule(q), cpos + 1);
        }

        // Both predecessors must already be H's (walls or earlier leftovers).
        for (int q : {ctrl, out}) {
            const std::size_t prv = prev_touching(tc.ops(), cpos, q);
            if (prv == tc.ops().size() || !is_h_on(tc.ops()[prv], q))
                bad_shape("missing Hadamard before a bank CNOT");
        }

        // Shepherd the four H's against the CNOT: rightmost predecessor to
        // cpos-1, the other to cpos-2, nearest successor to cpos+1, the
        // other to cpos+2. Every crossed op is disjoint by the touching
        // scans, and the CNOT itself never moves.
        tc.move_right_to(std::max(prev_touching(tc.ops(), cpos, ctrl),
                                  prev_touching(tc.ops(), cpos, out)),
                         cpos);
        tc.move_right_to(std::min(prev_touching(tc.ops(), cpos, ctrl),
                                  prev_touching(tc.ops(), cpos, out)),
                         cpos - 1);
        tc.move_left_to(std::min(next_touching(tc.ops(), cpos, ctrl),
                                 next_touching(tc.ops(), cpos, out)),
                        cpos + 1);
        tc.move_left_to(std::max(next_touching(tc.ops(), cpos, ctrl),
                                 next_touching(tc.ops(), cpos, out)),
                        cpos + 2);
        tc.apply(conjugate, cpos - 2);
    }

    // Step 3: sweep residual H pairs.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < tc.ops().size(); ++i) {
            const GateOp* g = as_named(tc.ops()[i], "H");
            if (!g) continue;
            const int q = g->qubits[0];
            const std::size_t j = next_touching(tc.ops(), i, q);
            if (j == tc.ops().size() || !is_h_on(tc.ops()[j], q)) continue;
            tc.move_left_to(j, i + 1);
            tc.apply(cancel, i);
            changed = true;
            break;
        }
    }

    Circuit result = tc.circuit();
    return {std::move(result), tc.take_trace()};
}

std::pair<Circuit, std::vector<RewriteStep>> simplify_local(const Circuit& c) {
    c.validate();
    TracedCircuit tc(c);
    const char* names[] = {"hh_cancel", "hxh_to_z", "hzh_to_x"};
    bool changed = true;
    while (changed) {
        changed = false;
        const std::size_t prefix = tc.circuit().unitary_prefix_length();
        for (const char* name : names) {
            const RewriteRule& rule = rule_by_name(name);
            if (prefix < rule.window) continue;
            for (std::size_t pos = 0; pos + rule.window <= prefix; ++pos) {
                const Window w(tc.ops().data() + pos, rule.window);
                if (rule.rewrite(w)) {
                    tc.apply(rule, pos);
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
    }
    Circuit result = tc.circuit();
    return {std::move(result), tc.take_trace()};
}

// ---------------------------------------------------------------------------
// Equivalence certificates

namespace {

GateMatrix checked_unitary(const Circuit& c) {
    if (c.unitary_prefix_length() != c.ops.size())
        throw std::invalid_argument("equivalence is defined on measurement-free circuits");
    if (c.width > kMaxEquivalenceWidth)
        throw std::invalid_argument("equivalence check limited to width <= " +
                                    std::to_string(kMaxEquivalenceWidth));
    return circuit_unitary(c);
}

double deviation_impl(const Circuit& c1, const Circuit& c2) {
    if (c1.width != c2.width)
        throw std::invalid_argument("circuit widths differ");
    const GateMatrix u1 = checked_unitary(c1);
    const GateMatrix u2 = checked_unitary(c2);

    Eigen::Index ri = 0, ci = 0;
    u2.cwiseAbs().maxCoeff(&ri, &ci);
    Amplitude phase{1.0, 0.0};
    const Amplitude denom = u2(ri, ci);
    if (std::abs(denom) > 0.0) {
        Amplitude ratio = u1(ri, ci) / denom;
        if (std::abs(ratio) > 0.0) phase = ratio / std::abs(ratio);
    }
    return (u1 - phase * u2).cwiseAbs().maxCoeff();
}

}  // namespace

bool equivalence_check(const Circuit& c1, const Circuit& c2, double tol) {
    return deviation_impl(c1, c2) <= tol;
}

double circuit_deviation(const Circuit& c1, const Circuit& c2) {
    return deviation_impl(c1, c2);
}

std::string trace_to_json_lines(std::span<const RewriteStep> trace) {
    std::string out;
    for (const RewriteStep& s : trace) {
        nlohmann::ordered_json j;
        j["rule"] = s.rule;
        j["position"] = s.position;
        j["before_len"] = s.before_len;
        j["after_len"] = s.after_len;
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace qcsim
