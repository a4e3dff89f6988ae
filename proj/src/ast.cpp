#include "rapidbench/ast.hpp"

#include <cctype>

#include "rapidbench/numerals.hpp"

namespace rapidbench {

std::string fold_case(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

bool ident_equal(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::Linear: return "linear";
        case MoveKind::Joint: return "joint";
        case MoveKind::Circular: return "circular";
    }
    return "";
}

const std::string& target_name(const TargetExpr& t) {
    if (const auto* n = std::get_if<NamedTarget>(&t)) return n->name;
    return std::get<OffsetTarget>(t).name;
}

SourcePos statement_pos(const Statement& s) {
    return std::visit([](const auto& v) { return v.pos; }, s);
}

const TargetDecl* ModuleAst::find_declaration(std::string_view name) const {
    for (const auto& d : declarations)
        if (ident_equal(d.name, name)) return &d;
    return nullptr;
}

const ProcAst* ModuleAst::find_procedure(std::string_view name) const {
    for (const auto& p : procedures)
        if (ident_equal(p.name, name)) return &p;
    return nullptr;
}

namespace {

bool target_expr_equal(const TargetExpr& a, const TargetExpr& b, double rel_tol) {
    if (a.index() != b.index()) return false;
    if (const auto* an = std::get_if<NamedTarget>(&a))
        return ident_equal(an->name, std::get<NamedTarget>(b).name);
    const auto& ao = std::get<OffsetTarget>(a);
    const auto& bo = std::get<OffsetTarget>(b);
    return ident_equal(ao.name, bo.name) && numbers_close(ao.dx, bo.dx, rel_tol) &&
           numbers_close(ao.dy, bo.dy, rel_tol) && numbers_close(ao.dz, bo.dz, rel_tol);
}

bool robtarget_equal(const RobTarget& a, const RobTarget& b, double rel_tol) {
    if (!numbers_close(a.trans.x, b.trans.x, rel_tol) ||
        !numbers_close(a.trans.y, b.trans.y, rel_tol) ||
        !numbers_close(a.trans.z, b.trans.z, rel_tol))
        return false;
    if (!numbers_close(a.orient.w, b.orient.w, rel_tol) ||
        !numbers_close(a.orient.x, b.orient.x, rel_tol) ||
        !numbers_close(a.orient.y, b.orient.y, rel_tol) ||
        !numbers_close(a.orient.z, b.orient.z, rel_tol))
        return false;
    if (a.conf != b.conf) return false;
    for (int i = 0; i < 6; ++i)
        if (!numbers_close(a.extax[i], b.extax[i], rel_tol)) return false;
    return true;
}

bool statement_equal(const Statement& a, const Statement& b, double rel_tol) {
    if (a.index() != b.index()) return false;
    if (const auto* aw = std::get_if<WaitStmt>(&a))
        return numbers_close(aw->seconds, std::get<WaitStmt>(b).seconds, rel_tol);
    const auto& am = std::get<MoveStmt>(a);
    const auto& bm = std::get<MoveStmt>(b);
    if (am.kind != bm.kind) return false;
    if (am.via.has_value() != bm.via.has_value()) return false;
    if (am.via && !target_expr_equal(*am.via, *bm.via, rel_tol)) return false;
    if (!target_expr_equal(am.target, bm.target, rel_tol)) return false;
    if (!ident_equal(am.speed, bm.speed) || !ident_equal(am.zone, bm.zone) ||
        !ident_equal(am.tool, bm.tool))
        return false;
    if (am.wobj.has_value() != bm.wobj.has_value()) return false;
    if (am.wobj && !ident_equal(*am.wobj, *bm.wobj)) return false;
    return true;
}

}  // namespace

bool ast_equal(const ModuleAst& a, const ModuleAst& b, double rel_tol) {
    if (!ident_equal(a.name, b.name)) return false;
    if (a.declarations.size() != b.declarations.size()) return false;
    for (std::size_t i = 0; i < a.declarations.size(); ++i) {
        if (!ident_equal(a.declarations[i].name, b.declarations[i].name)) return false;
        if (!robtarget_equal(a.declarations[i].target, b.declarations[i].target, rel_tol))
            return false;
    }
    if (a.procedures.size() != b.procedures.size()) return false;
    for (std::size_t i = 0; i < a.procedures.size(); ++i) {
        const auto& ap = a.procedures[i];
        const auto& bp = b.procedures[i];
        if (!ident_equal(ap.name, bp.name)) return false;
        if (ap.statements.size() != bp.statements.size()) return false;
        for (std::size_t j = 0; j < ap.statements.size(); ++j)
            if (!statement_equal(ap.statements[j], bp.statements[j], rel_tol)) return false;
    }
    return true;
}

}  // namespace rapidbench
