#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rapidbench/errors.hpp"
#include "rapidbench/geometry.hpp"

namespace rapidbench {

/// ASCII case folding; RAPID identifiers and keywords compare case-insensitively.
std::string fold_case(std::string_view s);
bool ident_equal(std::string_view a, std::string_view b);

enum class MoveKind { Linear, Joint, Circular };

const char* move_kind_name(MoveKind k);  // "linear" / "joint" / "circular"

struct NamedTarget {
    std::string name;
};

/// Offs(name, dx, dy, dz); exactly one level deep, never nested.
struct OffsetTarget {
    std::string name;
    double dx = 0, dy = 0, dz = 0;
};

using TargetExpr = std::variant<NamedTarget, OffsetTarget>;

/// Base target name of a target expression.
const std::string& target_name(const TargetExpr& t);

struct MoveStmt {
    MoveKind kind = MoveKind::Linear;
    std::optional<TargetExpr> via;  // present iff kind == Circular
    TargetExpr target;
    std::string speed;
    std::string zone;
    std::string tool;
    std::optional<std::string> wobj;
    SourcePos pos;
};

struct WaitStmt {
    double seconds = 0;  // non-negative
    SourcePos pos;
};

using Statement = std::variant<MoveStmt, WaitStmt>;

SourcePos statement_pos(const Statement& s);

struct RobTarget {
    Vec3 trans;                    // millimetres
    Quat orient;                   // unit quaternion
    std::array<int, 4> conf{};     // each in [-4, 4]
    std::array<double, 6> extax{}; // 9e9 means "axis unused"
};

struct TargetDecl {
    std::string name;
    RobTarget target;
    SourcePos pos;
};

struct ProcAst {
    std::string name;
    std::vector<Statement> statements;
    SourcePos pos;
};

struct ModuleAst {
    std::string name;
    std::vector<TargetDecl> declarations;  // names unique case-insensitively
    std::vector<ProcAst> procedures;

    const TargetDecl* find_declaration(std::string_view name) const;
    const ProcAst* find_procedure(std::string_view name) const;
};

/// Structural equality with numerals compared within rel_tol (1e-9 absolute
/// floor near zero) and identifiers compared case-insensitively.
bool ast_equal(const ModuleAst& a, const ModuleAst& b, double rel_tol = 1e-6);

}  // namespace rapidbench
