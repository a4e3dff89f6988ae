#pragma once

#include <string>
#include <variant>

#include "rapidbench/ast.hpp"

namespace rapidbench {

/// Which statements a task applies to, counting movement statements only,
/// 1-based. ByTarget matches on the base target name.
struct SelectAll {};
struct SelectIndexRange {
    int lo = 1;
    int hi = 1;  // inclusive
};
struct SelectIndex {
    int index = 1;
};
struct SelectByTarget {
    std::string name;
};

enum class MoveField { Speed, Zone, Tool };

/// Task 1: rewrite one argument field of the selected movement statements.
struct ArgModParams {
    std::variant<SelectAll, SelectIndexRange, SelectByTarget> selector;
    MoveField field = MoveField::Speed;
    std::string new_value;
};

/// Task 2: wrap the selected statement's target in an offset (composing
/// componentwise if it is already offset). The selector must resolve to
/// exactly one movement statement.
struct AddOffsetParams {
    std::variant<SelectIndex, SelectByTarget> selector;
    double dx = 0, dy = 0, dz = 0;
};

enum class ReverseMode { Instruction, Segment };

/// Task 3: reverse the routine. Instruction mode reverses the statement list
/// (wait statements travel with their preceding move); segment mode rebuilds
/// the physically reversed path, re-associating speed/kind/via with the
/// traversed segment and zone with the corner point.
struct ReverseParams {
    ReverseMode mode = ReverseMode::Instruction;
};

using TaskParams = std::variant<ArgModParams, AddOffsetParams, ReverseParams>;

/// "t1" / "t2" / "t3"
std::string task_tag(const TaskParams& params);

/// JSON wire form: {"task": "t1"|"t2"|"t3", ...fields}. Throws ConfigError
/// on malformed input.
std::string task_params_to_json(const TaskParams& params);
TaskParams task_params_from_json(const std::string& json_text);

/// Applies one task to the named procedure and returns the rewritten module.
/// Declarations and all other procedures are preserved untouched. Throws
/// SelectorMiss, AmbiguousSelector, CircularInInstructionMode, or
/// UnresolvedName (unknown procedure).
ModuleAst apply_task(const ModuleAst& mod, const std::string& proc_name, const TaskParams& params);

}  // namespace rapidbench
