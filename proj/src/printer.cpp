#include "rapidbench/printer.hpp"

#include <cctype>
#include <sstream>

#include "rapidbench/lexer.hpp"
#include "rapidbench/numerals.hpp"

namespace rapidbench {

namespace {

// The pretty printer and the canonicalizer share one renderer; they differ
// only in spacing and spelling policy.
struct Style {
    bool canonical = false;

    std::string kw(Keyword k) const {
        std::string s = keyword_spelling(k);
        if (!canonical) return s;
        for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return s;
    }
    std::string id(const std::string& name) const { return canonical ? fold_case(name) : name; }
};

void render_target_expr(std::ostringstream& out, const TargetExpr& t, const Style& st) {
    if (const auto* n = std::get_if<NamedTarget>(&t)) {
        out << st.id(n->name);
        return;
    }
    const auto& off = std::get<OffsetTarget>(t);
    out << st.kw(Keyword::Offs) << "(" << st.id(off.name) << ", " << format_number(off.dx) << ", "
        << format_number(off.dy) << ", " << format_number(off.dz) << ")";
}

void render_robtarget(std::ostringstream& out, const RobTarget& rt) {
    out << "[[" << format_number(rt.trans.x) << ", " << format_number(rt.trans.y) << ", "
        << format_number(rt.trans.z) << "], [" << format_number(rt.orient.w) << ", "
        << format_number(rt.orient.x) << ", " << format_number(rt.orient.y) << ", "
        << format_number(rt.orient.z) << "], [" << rt.conf[0] << ", " << rt.conf[1] << ", "
        << rt.conf[2] << ", " << rt.conf[3] << "], [";
    for (int i = 0; i < 6; ++i) {
        if (i > 0) out << ", ";
        out << format_number(rt.extax[i]);
    }
    out << "]]";
}

void render_statement(std::ostringstream& out, const Statement& stmt, const Style& st) {
    if (const auto* wait = std::get_if<WaitStmt>(&stmt)) {
        out << st.kw(Keyword::WaitTime) << " " << format_number(wait->seconds) << ";";
        return;
    }
    const auto& move = std::get<MoveStmt>(stmt);
    Keyword instr = move.kind == MoveKind::Linear   ? Keyword::MoveL
                    : move.kind == MoveKind::Joint ? Keyword::MoveJ
                                                   : Keyword::MoveC;
    out << st.kw(instr) << " ";
    if (move.via) {
        render_target_expr(out, *move.via, st);
        out << ", ";
    }
    render_target_expr(out, move.target, st);
    out << ", " << st.id(move.speed) << ", " << st.id(move.zone) << ", " << st.id(move.tool);
    if (move.wobj) out << "\\" << (st.canonical ? "WOBJ" : "WObj") << ":=" << st.id(*move.wobj);
    out << ";";
}

std::string render(const ModuleAst& mod, const Style& st) {
    std::ostringstream out;
    const char* ind1 = st.canonical ? "" : "    ";
    const char* ind2 = st.canonical ? "" : "        ";
    const char* sep = st.canonical ? " " : "\n";

    out << st.kw(Keyword::Module) << " " << st.id(mod.name) << sep;
    for (const auto& decl : mod.declarations) {
        out << ind1 << st.kw(Keyword::Const) << " " << st.kw(Keyword::RobTarget) << " "
            << st.id(decl.name) << " := ";
        render_robtarget(out, decl.target);
        out << ";" << sep;
    }
    for (const auto& proc : mod.procedures) {
        out << ind1 << st.kw(Keyword::Proc) << " " << st.id(proc.name) << "()" << sep;
        for (const auto& stmt : proc.statements) {
            out << ind2;
            render_statement(out, stmt, st);
            out << sep;
        }
        out << ind1 << st.kw(Keyword::EndProc) << sep;
    }
    out << st.kw(Keyword::EndModule);
    if (!st.canonical) out << "\n";
    return out.str();
}

}  // namespace

std::string print_module(const ModuleAst& mod) { return render(mod, Style{false}); }

CanonicalForm canonicalize(const ModuleAst& mod) { return CanonicalForm{render(mod, Style{true})}; }

}  // namespace rapidbench
