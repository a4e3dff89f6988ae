#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "rapidbench/conformance.hpp"
#include "rapidbench/parser.hpp"
#include "rapidbench/printer.hpp"
#include "rapidbench/transforms.hpp"

using namespace rapidbench;

namespace {

const char* kGoodModule =
    "MODULE M\n"
    "CONST robtarget p1 := [[100, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n"
    "CONST robtarget p2 := [[100, 200, 0], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n"
    "PROC main()\n"
    "    MoveL p1, v100, z10, tool0;\n"
    "    MoveJ p2, v200, fine, tool0;\n"
    "ENDPROC\n"
    "ENDMODULE\n";

std::vector<std::string> rule_ids(const ValidationReport& report) {
    std::vector<std::string> out;
    for (const auto& v : report.violations) out.push_back(v.rule_id);
    return out;
}

}  // namespace

TEST_CASE("validate: well-formed module passes the defaults") {
    ValidationReport report = validate(kGoodModule, RuleSet::defaults());
    CHECK(report.pass());
    CHECK(report.to_text() == "pass\n");
}

TEST_CASE("validate: unparsable text yields a single R1") {
    ValidationReport report = validate("MODULE M Move;", RuleSet::defaults());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].rule_id == "R1");
}

TEST_CASE("validate: disallowed speed is one R3") {
    std::string text = kGoodModule;
    std::string from = "v100";
    text.replace(text.find(from), from.size(), "v123");
    ValidationReport report = validate(text, RuleSet::defaults());
    CHECK(rule_ids(report) == std::vector<std::string>{"R3"});
}

TEST_CASE("validate: disallowed tool reported under the allowed-set rule") {
    std::string text = kGoodModule;
    std::string from = "tool0;\n    MoveJ";
    text.replace(text.find(from), from.size(), "toolX;\n    MoveJ");
    ValidationReport report = validate(text, RuleSet::defaults());
    CHECK(rule_ids(report) == std::vector<std::string>{"R3"});
}

TEST_CASE("validate: undeclared target flagged as R2 when enabled") {
    std::string text = kGoodModule;
    std::string from = "MoveL p1";
    text.replace(text.find(from), from.size(), "MoveL p9");
    ValidationReport report = validate(text, RuleSet::defaults());
    CHECK(rule_ids(report) == std::vector<std::string>{"R2"});

    RuleSet relaxed = RuleSet::defaults();
    relaxed.require_declared_targets = false;
    CHECK(validate(text, relaxed).pass());
}

TEST_CASE("validate: remaining rules fire individually") {
    RuleSet rules = RuleSet::defaults();

    std::string zone = kGoodModule;
    std::string from = "z10";
    zone.replace(zone.find(from), from.size(), "z3");
    CHECK(rule_ids(validate(zone, rules)) == std::vector<std::string>{"R4"});

    std::string nofine = kGoodModule;
    from = "fine";
    nofine.replace(nofine.find(from), from.size(), "z10");
    CHECK(rule_ids(validate(nofine, rules)) == std::vector<std::string>{"R5"});

    std::string badname = kGoodModule;
    from = "PROC main";
    badname.replace(badname.find(from), from.size(),
                    "PROC a_name_well_beyond_the_thirty_two_character_limit");
    CHECK(rule_ids(validate(badname, rules)) == std::vector<std::string>{"R6"});

    RuleSet tight = rules;
    tight.max_moves_per_proc = 1;
    CHECK(rule_ids(validate(kGoodModule, tight)) == std::vector<std::string>{"R7"});
}

TEST_CASE("validate: deterministic ordering by location then rule id") {
    std::string text = kGoodModule;
    std::string from = "v100";
    text.replace(text.find(from), from.size(), "v123");  // R3 on line 4
    from = "fine";
    text.replace(text.find(from), from.size(), "z3");  // R4 + R5 on line 5
    ValidationReport a = validate(text, RuleSet::defaults());
    ValidationReport b = validate(text, RuleSet::defaults());
    CHECK(rule_ids(a) == std::vector<std::string>{"R3", "R4", "R5"});
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("rules file: load, override, reject unknown keys") {
    RuleSet rs = RuleSet::from_config_text(
        "# house standards\n"
        "allowed_speeds = [\"v100\", \"V200\"]\n"
        "allowed_zones = [\"fine\"]\n"
        "allowed_tools = [\"tool0\", \"gripper\"]\n"
        "require_final_fine = false\n"
        "proc_name_pattern = \"^[a-z_]+$\"\n"
        "max_moves_per_proc = 8\n"
        "require_declared_targets = true\n");
    CHECK(rs.allowed_speeds == std::set<std::string>{"v100", "v200"});
    CHECK(rs.allowed_tools.count("gripper") == 1);
    CHECK(rs.require_final_fine == false);
    CHECK(rs.max_moves_per_proc == 8);

    CHECK_THROWS_AS(RuleSet::from_config_text("allowed_speedz = [\"v100\"]\n"), ConfigError);
    CHECK_THROWS_AS(RuleSet::from_config_text("proc_name_pattern = \"([\"\n"), ConfigError);
}

TEST_CASE("strict_match: identity, mismatch, canonical forgiveness") {
    ModuleAst expected = parse_module(kGoodModule);
    CHECK(strict_match(print_module(expected), expected));
    CHECK(!strict_match("not rapid at all", expected));

    std::string wrong = kGoodModule;
    std::string from = "v100";
    wrong.replace(wrong.find(from), from.size(), "v200");
    CHECK(!strict_match(wrong, expected));

    std::string relaxed =
        "module m ! header comment\n"
        "const robtarget P1 := [[100, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n"
        "const robtarget P2 := [[100, 200, 0], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n"
        "proc MAIN()\n"
        "movel P1, V100, Z10, TOOL0;\n"
        "movej P2, V200, FINE, TOOL0;\n"
        "endproc\n"
        "endmodule\n";
    CHECK(strict_match(relaxed, expected));
}

TEST_CASE("functional_match: equivalent programs differ strictly but match functionally") {
    // The expected answer encodes the displacement as an explicit offset; the
    // candidate declares a shifted literal target instead.
    ModuleAst base = parse_module(
        "MODULE M\n"
        "CONST robtarget p1 := [[100, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n"
        "PROC main()\n"
        "    MoveL p1, v100, fine, tool0;\n"
        "ENDPROC\n"
        "ENDMODULE\n");
    ModuleAst expected = apply_task(base, "main", AddOffsetParams{SelectIndex{1}, 0, 0, 50});

    const char* candidate =
        "MODULE M\n"
        "CONST robtarget p1 := [[100, 0, 50], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n"
        "PROC main()\n"
        "    MoveL p1, v100, fine, tool0;\n"
        "ENDPROC\n"
        "ENDMODULE\n";

    CHECK(!strict_match(candidate, expected));
    CHECK(functional_match(candidate, expected, "main", Pose{}));
}

TEST_CASE("functional_match: gates on parse and resolution") {
    ModuleAst expected = parse_module(kGoodModule);
    CHECK(functional_match(print_module(expected), expected, "main", Pose{}));
    CHECK(!functional_match("garbage", expected, "main", Pose{}));

    std::string undeclared = kGoodModule;
    std::string from = "MoveL p1";
    undeclared.replace(undeclared.find(from), from.size(), "MoveL p9");
    CHECK(!functional_match(undeclared, expected, "main", Pose{}));
}

TEST_CASE("strict match implies functional match on resolvable programs") {
    ModuleAst expected = parse_module(kGoodModule);
    std::string variants[] = {
        print_module(expected),
        "module m\n"
        "const robtarget p1 := [[100, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n"
        "const robtarget p2 := [[100, 200, 0], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n"
        "proc main()\n"
        "movel p1, v100, z10, tool0;\n"
        "movej p2, v200, fine, tool0;\n"
        "endproc\nendmodule",
    };
    for (const auto& text : variants) {
        if (strict_match(text, expected)) CHECK(functional_match(text, expected, "main", Pose{}));
    }
}
