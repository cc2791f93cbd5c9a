#include "iadsim/default_logic.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "iadsim/common.hpp"

namespace iadsim::goals {

GoalFormula GoalFormula::atom(std::string name) {
    GoalFormula f;
    f.op_ = Op::Atom;
    f.atom_ = std::move(name);
    return f;
}

GoalFormula GoalFormula::negate(GoalFormula inner) {
    GoalFormula f;
    f.op_ = Op::Not;
    f.kids_.push_back(std::move(inner));
    return f;
}

GoalFormula GoalFormula::conj(GoalFormula lhs, GoalFormula rhs) {
    GoalFormula f;
    f.op_ = Op::And;
    f.kids_.push_back(std::move(lhs));
    f.kids_.push_back(std::move(rhs));
    return f;
}

GoalFormula GoalFormula::disj(GoalFormula lhs, GoalFormula rhs) {
    GoalFormula f;
    f.op_ = Op::Or;
    f.kids_.push_back(std::move(lhs));
    f.kids_.push_back(std::move(rhs));
    return f;
}

bool GoalFormula::eval(const AtomSet& goals) const {
    switch (op_) {
        case Op::Atom: return goals.count(atom_) > 0;
        case Op::Not: return !kids_[0].eval(goals);
        case Op::And: return kids_[0].eval(goals) && kids_[1].eval(goals);
        case Op::Or: return kids_[0].eval(goals) || kids_[1].eval(goals);
    }
    return false;
}

std::string GoalFormula::text() const {
    switch (op_) {
        case Op::Atom: return atom_;
        case Op::Not: return "!(" + kids_[0].text() + ")";
        case Op::And: return "(" + kids_[0].text() + " & " + kids_[1].text() + ")";
        case Op::Or: return "(" + kids_[0].text() + " | " + kids_[1].text() + ")";
    }
    return {};
}

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// recursive-descent formula parser: or_expr := and_expr ('|' and_expr)*
struct FormulaParser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    GoalFormula parse_or() {
        GoalFormula f = parse_and();
        while (eat('|')) f = GoalFormula::disj(std::move(f), parse_and());
        return f;
    }

    GoalFormula parse_and() {
        GoalFormula f = parse_unary();
        while (eat('&')) f = GoalFormula::conj(std::move(f), parse_unary());
        return f;
    }

    GoalFormula parse_unary() {
        skip_ws();
        if (eat('!')) return GoalFormula::negate(parse_unary());
        if (eat('(')) {
            GoalFormula f = parse_or();
            if (!eat(')')) throw std::invalid_argument("unbalanced parenthesis in formula");
            return f;
        }
        size_t start = pos;
        while (pos < text.size() && text.find_first_of("&|!()", pos) != pos) ++pos;
        std::string name = trim(text.substr(start, pos - start));
        if (name.empty()) throw std::invalid_argument("empty atom in formula");
        return GoalFormula::atom(std::move(name));
    }
};

AtomSet parse_atom_list(std::string_view s) {
    AtomSet out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string_view::npos) comma = s.size();
        std::string atom = trim(s.substr(pos, comma - pos));
        if (!atom.empty()) out.insert(std::move(atom));
        pos = comma + 1;
    }
    return out;
}

}  // namespace

GoalFormula parse_formula(std::string_view text) {
    FormulaParser p{text};
    GoalFormula f = p.parse_or();
    p.skip_ws();
    if (p.pos != text.size()) throw std::invalid_argument("trailing characters in formula");
    return f;
}

namespace {

bool applicable(const GoalInferenceRule& rule, const AtomSet& beliefs, const AtomSet& prereqs,
                const AtomSet& justification_context) {
    for (const std::string& b : rule.beliefs) {
        if (!beliefs.count(b)) return false;
    }
    for (const std::string& g : rule.positive_goals) {
        if (!prereqs.count(g)) return false;
    }
    for (const std::string& g : rule.negative_goals) {
        if (justification_context.count(g)) return false;
    }
    return true;
}

// Monotone closure with justifications checked against `candidate`.
AtomSet closure_against(const std::vector<GoalInferenceRule>& rules, const AtomSet& beliefs,
                        const AtomSet& candidate) {
    AtomSet closed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const GoalInferenceRule& rule : rules) {
            if (closed.count(rule.derived_goal)) continue;
            if (applicable(rule, beliefs, closed, candidate)) {
                closed.insert(rule.derived_goal);
                changed = true;
            }
        }
    }
    return closed;
}

void enumerate_candidates(const std::vector<GoalInferenceRule>& rules, const AtomSet& beliefs,
                          const AtomSet& current, std::set<AtomSet>& seen,
                          std::set<AtomSet>& candidates) {
    if (seen.count(current)) return;
    seen.insert(current);

    bool any = false;
    for (const GoalInferenceRule& rule : rules) {
        if (current.count(rule.derived_goal)) continue;
        if (!applicable(rule, beliefs, current, current)) continue;
        any = true;
        AtomSet next = current;
        next.insert(rule.derived_goal);
        enumerate_candidates(rules, beliefs, next, seen, candidates);
    }
    if (!any) candidates.insert(current);
}

}  // namespace

std::vector<Extension> compute_extensions(const std::vector<GoalInferenceRule>& rules,
                                          const AtomSet& beliefs) {
    for (const GoalInferenceRule& rule : rules) {
        if (rule.negative_goals.count(rule.derived_goal)) {
            throw ValidationError("rule derives a goal listed in its own k- set");
        }
    }

    std::set<AtomSet> seen;
    std::set<AtomSet> candidates;
    enumerate_candidates(rules, beliefs, {}, seen, candidates);

    std::vector<Extension> extensions;
    for (const AtomSet& candidate : candidates) {
        // Reiter fixpoint test: rebuilding the closure with justifications
        // evaluated against the candidate must reproduce it exactly.
        if (closure_against(rules, beliefs, candidate) == candidate) {
            extensions.push_back(Extension{candidate});
        }
    }
    std::sort(extensions.begin(), extensions.end());
    return extensions;
}

std::vector<GoalFormula> check_conflicts(const AtomSet& goals,
                                         const std::vector<GoalFormula>& forbidden) {
    std::vector<GoalFormula> violations;
    for (const GoalFormula& f : forbidden) {
        if (f.eval(goals)) violations.push_back(f);
    }
    return violations;
}

TraceReport validate_trace(const std::vector<std::pair<int, AtomSet>>& trace,
                           const std::vector<GoalInferenceRule>& rules,
                           const std::vector<GoalFormula>& forbidden) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].first <= trace[i - 1].first) {
            throw std::invalid_argument("trace ticks must be strictly increasing");
        }
    }

    AtomSet beliefs;
    for (const GoalInferenceRule& rule : rules) {
        beliefs.insert(rule.beliefs.begin(), rule.beliefs.end());
    }
    const std::vector<Extension> extensions = compute_extensions(rules, beliefs);

    TraceReport report;
    for (const auto& [tick, goals] : trace) {
        for (const GoalFormula& f : check_conflicts(goals, forbidden)) {
            report.violations.push_back(TraceViolation{tick, "conflict", f.text()});
        }
        bool covered = false;
        for (const Extension& ext : extensions) {
            if (std::includes(ext.goals.begin(), ext.goals.end(), goals.begin(), goals.end())) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            std::string joined;
            for (const std::string& g : goals) {
                if (!joined.empty()) joined += ", ";
                joined += g;
            }
            report.violations.push_back(
                TraceViolation{tick, "uncovered", "{" + joined + "} not within any extension"});
        }
        if (!report.violations.empty() && !report.first_offending_tick) {
            report.first_offending_tick = tick;
        }
    }
    return report;
}

RuleSet parse_rules(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rules_text(buf.str());
}

RuleSet parse_rules_text(const std::string& text, int first_line) {
    RuleSet out;
    std::istringstream in(text);
    std::string raw;
    int line_no = first_line - 1;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') continue;  // section header

        if (line.rfind("conflict:", 0) == 0) {
            try {
                out.forbidden.push_back(parse_formula(line.substr(9)));
            } catch (const std::exception& e) {
                throw ParseError(line_no, e.what());
            }
            continue;
        }

        size_t arrow = line.find("=>");
        if (arrow == std::string::npos) {
            throw ParseError(line_no, "expected 'beliefs | k- | k+ => goal' or 'conflict: ...'");
        }
        std::string lhs = line.substr(0, arrow);
        std::string goal = trim(line.substr(arrow + 2));
        if (goal.empty()) throw ParseError(line_no, "missing derived goal");

        size_t bar1 = lhs.find('|');
        size_t bar2 = bar1 == std::string::npos ? std::string::npos : lhs.find('|', bar1 + 1);
        if (bar1 == std::string::npos || bar2 == std::string::npos) {
            throw ParseError(line_no, "rule needs two '|' separators");
        }
        GoalInferenceRule rule;
        rule.beliefs = parse_atom_list(std::string_view(lhs).substr(0, bar1));
        rule.negative_goals =
            parse_atom_list(std::string_view(lhs).substr(bar1 + 1, bar2 - bar1 - 1));
        rule.positive_goals = parse_atom_list(std::string_view(lhs).substr(bar2 + 1));
        rule.derived_goal = goal;
        if (rule.negative_goals.count(rule.derived_goal)) {
            throw ParseError(line_no, "rule derives a goal listed in its own k- set");
        }
        out.rules.push_back(std::move(rule));
    }
    return out;
}

RuleSet parse_rules_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rules file: " + path);
    return parse_rules(in);
}

RuleSet radar_mode_rules() {
    RuleSet rs;
    rs.rules = {
        {{"Jammed"}, {"Frequency Hopping"}, {}, "Switch Off"},
        {{"Jammed"}, {"Switch Off"}, {}, "Frequency Hopping"},
        {{}, {}, {"Frequency Hopping"}, "Sense Mode"},
        {{}, {}, {"Switch Off"}, "Sleep Mode"},
        // restatement lines in default notation; the k+ guard holds their own
        // consequent, so they never fire first
        {{}, {"Frequency Hopping"}, {"Switch Off"}, "Switch Off"},
        {{}, {"Switch Off"}, {"Frequency Hopping"}, "Frequency Hopping"},
    };
    const char* pairs[][2] = {
        {"Switch Off", "Frequency Hopping"},
        {"Sense Mode", "Sleep Mode"},
        {"Switch Off", "Sense Mode"},
        {"Frequency Hopping", "Sleep Mode"},
    };
    for (const auto& p : pairs) {
        rs.forbidden.push_back(
            GoalFormula::conj(GoalFormula::atom(p[0]), GoalFormula::atom(p[1])));
    }
    return rs;
}

}  // namespace iadsim::goals
