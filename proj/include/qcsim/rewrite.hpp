#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcsim/circuit.hpp"

namespace qcsim {

/// Default tolerance for "equal up to one global phase" on dense unitaries.
inline constexpr double kPhaseTolerance = 1e-9;

/// Largest width for which full-unitary equivalence is checked.
inline constexpr int kMaxEquivalenceWidth = 10;

/// How a rule earns its keep: local-conjugation rules insert or remove only
/// one-wire gates, entangling-conjugation rules move two-wire gates around,
/// structural rules reorder or bookkeep without conjugating anything.
enum class RuleLocality { LocalConjugation, EntanglingConjugation, Structural };

/// A sound window replacement: when `rewrite` accepts a window, the window
/// and its replacement have the same unitary up to a global phase. Every
/// shipped rule carries a machine-checked certificate of that claim.
struct RewriteRule {
    std::string name;
    RuleLocality locality;
    std::size_t window;  // ops consumed; 0 means pure insertion
    std::function<std::optional<std::vector<CircuitOp>>(std::span<const CircuitOp>)>
        rewrite;
};

struct RewriteStep {
    std::string rule;
    std::size_t position = 0;
    std::size_t before_len = 0;
    std::size_t after_len = 0;
};

/// The shipped rule set: hh_cancel, hxh_to_z, hzh_to_x, conjugate_cnot,
/// swap_conjugation, cz_flip, commute_disjoint.
const std::vector<RewriteRule>& standard_rules();
const RewriteRule& rule_by_name(std::string_view name);

/// Insertion of the identity pair [H q; H q] at a position.
RewriteRule hh_insert_rule(int q);

/// Applies `rule` at `position` inside the unitary prefix. Throws when the
/// rule does not match there. The circuit width never changes and the whole
/// circuit's unitary is preserved up to global phase.
Circuit rewrite_step(const Circuit& c, const RewriteRule& rule, std::size_t position);

/// Replaces the circuit's oracle marker with its as-if gate bank: one CNOT
/// per set bit of `a`, controlled by the input wire carrying that bit and
/// targeting the output wire, most significant bit first.
Circuit expand_oracle(const Circuit& c, std::uint64_t a);

/// Drives the one-query circuit to its reversed form: expands the oracle
/// (when still boxed), conjugates each CNOT left to right by locating or
/// inserting its flanking H pairs, then sweeps residual H pairs away. Every
/// primitive application lands in the trace. The result is one CNOT per set
/// bit of a, controlled by the output wire.
std::pair<Circuit, std::vector<RewriteStep>> bv_simplify(const Circuit& c);

/// Fixpoint of the length-reducing local rules (hh_cancel, hxh_to_z,
/// hzh_to_x) scanning left to right. Used by the CLI on oracle-free input.
std::pair<Circuit, std::vector<RewriteStep>> simplify_local(const Circuit& c);

/// True iff the two measurement-free circuits have equal unitaries up to one
/// global phase within tol, the phase fixed from c2's largest entry.
/// Throws on width mismatch, width > kMaxEquivalenceWidth, or measurements.
bool equivalence_check(const Circuit& c1, const Circuit& c2, double tol);

/// max_ij |U1 - c U2| under the same phase convention; the number
/// equivalence_check compares against tol.
double circuit_deviation(const Circuit& c1, const Circuit& c2);

/// One JSON object per step: {"rule", "position", "before_len", "after_len"}.
std::string trace_to_json_lines(std::span<const RewriteStep> trace);

}  // namespace qcsim
