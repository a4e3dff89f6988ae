#include "rapidbench/conformance.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "rapidbench/config.hpp"
#include "rapidbench/parser.hpp"

namespace rapidbench {

RuleSet RuleSet::defaults() {
    RuleSet rs;
    rs.allowed_speeds = {"v5",    "v10",   "v20",   "v30",   "v40",   "v50",   "v60",
                         "v80",   "v100",  "v150",  "v200",  "v300",  "v400",  "v500",
                         "v600",  "v800",  "v1000", "v1500", "v2000", "v2500", "v3000",
                         "v4000", "v5000", "v6000", "v7000", "vmax"};
    rs.allowed_zones = {"fine", "z0",  "z1",  "z5",   "z10",  "z15",  "z20", "z30",
                        "z40",  "z50", "z60", "z80", "z100", "z150", "z200"};
    rs.allowed_tools = {"tool0"};
    rs.require_final_fine = true;
    rs.proc_name_pattern = "^[A-Za-z][A-Za-z0-9_]{0,31}$";
    rs.max_moves_per_proc = 64;
    rs.require_declared_targets = true;
    return rs;
}

RuleSet RuleSet::parse_only() {
    RuleSet rs;
    rs.require_final_fine = false;
    rs.require_declared_targets = true;
    return rs;
}

namespace {

std::set<std::string> folded_set(const nlohmann::json& arr, const std::string& key) {
    if (!arr.is_array()) throw ConfigError("rules: '" + key + "' must be an array of identifiers");
    std::set<std::string> out;
    for (const auto& item : arr) {
        if (!item.is_string()) throw ConfigError("rules: '" + key + "' must contain strings");
        out.insert(fold_case(item.get<std::string>()));
    }
    return out;
}

}  // namespace

RuleSet RuleSet::from_config_text(std::string_view text) {
    nlohmann::json cfg = parse_config_text(text);
    RuleSet rs;
    for (const auto& [key, value] : cfg.items()) {
        if (key == "allowed_speeds")
            rs.allowed_speeds = folded_set(value, key);
        else if (key == "allowed_zones")
            rs.allowed_zones = folded_set(value, key);
        else if (key == "allowed_tools")
            rs.allowed_tools = folded_set(value, key);
        else if (key == "require_final_fine")
            rs.require_final_fine = value.get<bool>();
        else if (key == "proc_name_pattern")
            rs.proc_name_pattern = value.get<std::string>();
        else if (key == "max_moves_per_proc")
            rs.max_moves_per_proc = value.get<int>();
        else if (key == "require_declared_targets")
            rs.require_declared_targets = value.get<bool>();
        else
            throw ConfigError("rules: unknown key '" + key + "'");
    }
    if (rs.max_moves_per_proc < 0) throw ConfigError("rules: max_moves_per_proc must be positive");
    if (!rs.proc_name_pattern.empty()) {
        try {
            std::regex probe(rs.proc_name_pattern);
        } catch (const std::regex_error& e) {
            throw ConfigError(std::string("rules: invalid proc_name_pattern: ") + e.what());
        }
    }
    return rs;
}

RuleSet RuleSet::load(const std::string& path) { return from_config_text(read_text_file(path)); }

namespace {

void check_target(const ModuleAst& mod, const TargetExpr& expr, SourcePos pos,
                  std::vector<Violation>& out) {
    const std::string& name = target_name(expr);
    if (!mod.find_declaration(name))
        out.push_back({"R2", pos, "target '" + name + "' is not declared"});
}

}  // namespace

ValidationReport validate(std::string_view source, const RuleSet& rules) {
    ValidationReport report;
    ModuleAst mod;
    try {
        mod = parse_module(source);
    } catch (const ParseError& e) {
        report.violations.push_back({"R1", e.pos, e.what()});
        return report;
    } catch (const LexError& e) {
        report.violations.push_back({"R1", e.pos, e.what()});
        return report;
    }

    auto& out = report.violations;
    std::optional<std::regex> name_pattern;
    if (!rules.proc_name_pattern.empty()) name_pattern.emplace(rules.proc_name_pattern);

    for (const auto& proc : mod.procedures) {
        if (name_pattern && !std::regex_search(proc.name, *name_pattern))
            out.push_back({"R6", proc.pos,
                           "procedure name '" + proc.name + "' does not match pattern " +
                               rules.proc_name_pattern});

        int move_count = 0;
        const MoveStmt* last_move = nullptr;
        for (const auto& stmt : proc.statements) {
            const auto* move = std::get_if<MoveStmt>(&stmt);
            if (!move) continue;
            ++move_count;
            last_move = move;

            if (rules.require_declared_targets) {
                if (move->via) check_target(mod, *move->via, move->pos, out);
                check_target(mod, move->target, move->pos, out);
            }
            if (!rules.allowed_speeds.empty() && !rules.allowed_speeds.count(fold_case(move->speed)))
                out.push_back({"R3", move->pos, "speed '" + move->speed + "' is not in the allowed set"});
            if (!rules.allowed_tools.empty() && !rules.allowed_tools.count(fold_case(move->tool)))
                out.push_back({"R3", move->pos, "tool '" + move->tool + "' is not in the allowed set"});
            if (!rules.allowed_zones.empty() && !rules.allowed_zones.count(fold_case(move->zone)))
                out.push_back({"R4", move->pos, "zone '" + move->zone + "' is not in the allowed set"});
        }
        if (rules.require_final_fine && last_move && !ident_equal(last_move->zone, "fine"))
            out.push_back({"R5", last_move->pos,
                           "last movement of PROC " + proc.name + " must use zone fine"});
        if (rules.max_moves_per_proc > 0 && move_count > rules.max_moves_per_proc)
            out.push_back({"R7", proc.pos,
                           "PROC " + proc.name + " has " + std::to_string(move_count) +
                               " movements (limit " + std::to_string(rules.max_moves_per_proc) + ")"});
    }

    std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        if (a.location.line != b.location.line) return a.location.line < b.location.line;
        if (a.location.column != b.location.column) return a.location.column < b.location.column;
        return a.rule_id < b.rule_id;
    });
    return report;
}

std::string ValidationReport::to_json() const {
    nlohmann::json out;
    out["verdict"] = pass() ? "pass" : "fail";
    out["violations"] = nlohmann::json::array();
    for (const auto& v : violations) {
        out["violations"].push_back({{"rule", v.rule_id},
                                     {"line", v.location.line},
                                     {"column", v.location.column},
                                     {"message", v.message}});
    }
    return out.dump(2);
}

std::string ValidationReport::to_text() const {
    if (pass()) return "pass\n";
    std::ostringstream out;
    for (const auto& v : violations)
        out << v.rule_id << " at " << v.location.line << ":" << v.location.column << "  "
            << v.message << "\n";
    return out.str();
}

bool strict_match(std::string_view candidate, const ModuleAst& expected) {
    auto parsed = try_parse_module(candidate);
    return parsed && ast_equal(*parsed, expected, 1e-6);
}

bool functional_match(std::string_view candidate, const ModuleAst& expected,
                      const std::string& proc, const Pose& start, const Tables& tables) {
    if (!validate(candidate, RuleSet::parse_only()).pass()) return false;
    try {
        ModuleAst mod = parse_module(candidate);
        return traces_equal(interpret(mod, proc, start, tables),
                            interpret(expected, proc, start, tables), 1e-6);
    } catch (const Error&) {
        return false;
    }
}

}  // namespace rapidbench
