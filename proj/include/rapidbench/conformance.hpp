#pragma once

#include <set>
#include <string>
#include <vector>

#include "rapidbench/ast.hpp"
#include "rapidbench/motion.hpp"

namespace rapidbench {

/// Configurable house standards. A set-based rule is disabled when its set is
/// empty; the name-pattern rule when the pattern is empty; the move-count
/// rule when max_moves_per_proc is 0.
struct RuleSet {
    std::set<std::string> allowed_speeds;   // R3 (tools share the allowed-set rule id)
    std::set<std::string> allowed_zones;    // R4
    std::set<std::string> allowed_tools;    // checked under R3
    bool require_final_fine = true;         // R5
    std::string proc_name_pattern;          // R6, ECMAScript regex source
    int max_moves_per_proc = 0;             // R7
    bool require_declared_targets = true;   // R2

    static RuleSet defaults();
    static RuleSet parse_only();  // R1 + R2, used by functional scoring

    /// Loads the TOML-style rules file. Unknown keys and invalid regexes are
    /// ConfigErrors.
    static RuleSet load(const std::string& path);
    static RuleSet from_config_text(std::string_view text);
};

struct Violation {
    std::string rule_id;  // "R1".."R7"
    SourcePos location;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;  // ordered by location, then rule id

    bool pass() const { return violations.empty(); }
    std::string to_json() const;
    std::string to_text() const;
};

/// Runs the rule engine over source text. A parse failure yields a single R1
/// violation and suppresses everything else.
ValidationReport validate(std::string_view source, const RuleSet& rules);

/// Accuracy predicate for strict scoring: the candidate parses and matches
/// the expected module element-wise (numerals within 1e-6 relative,
/// identifiers case-insensitive). Unparsable candidates are simply false.
bool strict_match(std::string_view candidate, const ModuleAst& expected);

/// Functional scoring: the candidate parses, resolves (R1+R2), and its
/// motion trace for `proc` equals the expected module's within 1e-6 mm.
bool functional_match(std::string_view candidate, const ModuleAst& expected,
                      const std::string& proc, const Pose& start, const Tables& tables = {});

}  // namespace rapidbench
