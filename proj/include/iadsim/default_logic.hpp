#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace iadsim::goals {

using AtomSet = std::set<std::string>;

// Propositional formula over goal atoms. Conflict declarations store the
// conjunction found inside the paper-style "not-G{...}" wrapper, so a
// violation is simply the formula evaluating to true under the goal set.
class GoalFormula {
public:
    enum class Op { Atom, Not, And, Or };

    static GoalFormula atom(std::string name);
    static GoalFormula negate(GoalFormula f);
    static GoalFormula conj(GoalFormula lhs, GoalFormula rhs);
    static GoalFormula disj(GoalFormula lhs, GoalFormula rhs);

    bool eval(const AtomSet& goals) const;
    std::string text() const;
    Op op() const { return op_; }

private:
    GoalFormula() = default;
    Op op_ = Op::Atom;
    std::string atom_;
    std::vector<GoalFormula> kids_;
};

// Grammar: atoms are runs of characters other than & | ! ( ), trimmed;
// precedence ! > & > |.
GoalFormula parse_formula(std::string_view text);

// beliefs (beta) and supporting goals (k+) must hold, conflicting goals (k-)
// must stay absent for the rule to derive its goal.
struct GoalInferenceRule {
    AtomSet beliefs;
    AtomSet negative_goals;
    AtomSet positive_goals;
    std::string derived_goal;
};

struct Extension {
    AtomSet goals;
    bool operator==(const Extension& other) const { return goals == other.goals; }
    bool operator<(const Extension& other) const { return goals < other.goals; }
};

// All maximal consistent goal sets closed under the rules, by exhaustive
// search over application orders with a fixpoint check against each
// candidate's own justifications. Result is sorted and deduplicated.
std::vector<Extension> compute_extensions(const std::vector<GoalInferenceRule>& rules,
                                          const AtomSet& beliefs);

// Returns every forbidden formula entailed by the goal set.
std::vector<GoalFormula> check_conflicts(const AtomSet& goals,
                                         const std::vector<GoalFormula>& forbidden);

struct TraceViolation {
    int tick = 0;
    std::string kind;  // "conflict" or "uncovered"
    std::string detail;
};

struct TraceReport {
    std::vector<TraceViolation> violations;
    std::optional<int> first_offending_tick;
    bool valid() const { return violations.empty(); }
};

// Per tick: no forbidden formula may hold and the joint goal set must sit
// inside some extension of the rule set (beliefs taken as the union of all
// rule belief atoms, i.e. everything the rules can react to).
TraceReport validate_trace(const std::vector<std::pair<int, AtomSet>>& trace,
                           const std::vector<GoalInferenceRule>& rules,
                           const std::vector<GoalFormula>& forbidden);

struct RuleSet {
    std::vector<GoalInferenceRule> rules;
    std::vector<GoalFormula> forbidden;
};

// Text form, one entry per line:
//   beliefs | k- | k+ => goal      (comma-separated atom lists, any part empty)
//   conflict: <formula>
// '#' starts a comment, blank lines and a [GIR] header line are skipped.
RuleSet parse_rules(std::istream& in);
RuleSet parse_rules_text(const std::string& text, int first_line = 1);
RuleSet parse_rules_file(const std::string& path);

// The surveillance-radar jamming/mode rule set: a jammed radar may switch off
// or frequency-hop but not both, switch-off pairs with sleep, hopping with
// sense. The two mixed-notation restatement lines are kept as guarded
// tautologies (their k+ contains their own consequent, so they never extend
// an extension on their own).
RuleSet radar_mode_rules();

}  // namespace iadsim::goals
