#include "rapidbench/parser.hpp"

#include <cmath>
#include <set>

#include "rapidbench/lexer.hpp"

namespace rapidbench {

namespace {

class Parser {
public:
    explicit Parser(std::string_view source) : tokens_(tokenize(source)) {}

    ModuleAst run() {
        ModuleAst mod;
        expect_keyword(Keyword::Module);
        mod.name = expect_ident("module name");
        while (at_keyword(Keyword::Const)) mod.declarations.push_back(parse_decl());
        while (at_keyword(Keyword::Proc)) mod.procedures.push_back(parse_proc());
        expect_keyword(Keyword::EndModule);
        expect_kind(TokKind::End, "end of input");
        check_unique_declarations(mod);
        return mod;
    }

private:
    std::vector<Token> tokens_;
    std::size_t idx_ = 0;

    const Token& peek() const { return tokens_[idx_]; }

    const Token& take() {
        const Token& t = tokens_[idx_];
        if (t.kind != TokKind::End) ++idx_;
        return t;
    }

    bool at_keyword(Keyword k) const {
        return peek().kind == TokKind::KeywordTok && peek().keyword == k;
    }

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected = {}) {
        throw ParseError("expected " + what + ", found '" + describe(peek()) + "'", peek().pos,
                         std::move(expected));
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case TokKind::End: return "end of input";
            case TokKind::Switch: return "\\" + t.text + ":=";
            default: return t.text;
        }
    }

    void expect_keyword(Keyword k) {
        if (!at_keyword(k)) fail(std::string("'") + keyword_spelling(k) + "'", {keyword_spelling(k)});
        take();
    }

    const Token& expect_kind(TokKind kind, const char* what) {
        if (peek().kind != kind) fail(what, {what});
        return take();
    }

    std::string expect_ident(const char* what) {
        if (peek().kind != TokKind::Ident) fail(what, {"identifier"});
        return take().text;
    }

    double expect_number(const char* what) {
        if (peek().kind != TokKind::Number) fail(what, {"number"});
        return take().number;
    }

    TargetDecl parse_decl() {
        TargetDecl decl;
        decl.pos = peek().pos;
        expect_keyword(Keyword::Const);
        expect_keyword(Keyword::RobTarget);
        decl.name = expect_ident("target name");
        expect_kind(TokKind::Assign, "':='");
        decl.target = parse_robtarget();
        expect_kind(TokKind::Semicolon, "';'");
        return decl;
    }

    RobTarget parse_robtarget() {
        RobTarget rt;
        SourcePos open = peek().pos;
        expect_kind(TokKind::LBracket, "'['");
        // position
        expect_kind(TokKind::LBracket, "'['");
        rt.trans.x = expect_number("x coordinate");
        expect_kind(TokKind::Comma, "','");
        rt.trans.y = expect_number("y coordinate");
        expect_kind(TokKind::Comma, "','");
        rt.trans.z = expect_number("z coordinate");
        expect_kind(TokKind::RBracket, "']'");
        expect_kind(TokKind::Comma, "','");
        // orientation
        expect_kind(TokKind::LBracket, "'['");
        rt.orient.w = expect_number("q1");
        expect_kind(TokKind::Comma, "','");
        rt.orient.x = expect_number("q2");
        expect_kind(TokKind::Comma, "','");
        rt.orient.y = expect_number("q3");
        expect_kind(TokKind::Comma, "','");
        rt.orient.z = expect_number("q4");
        expect_kind(TokKind::RBracket, "']'");
        if (std::fabs(rt.orient.norm() - 1.0) > 1e-6)
            throw ParseError("orientation quaternion is not normalized", open);
        expect_kind(TokKind::Comma, "','");
        // configuration
        expect_kind(TokKind::LBracket, "'['");
        for (int i = 0; i < 4; ++i) {
            if (i > 0) expect_kind(TokKind::Comma, "','");
            SourcePos at = peek().pos;
            double v = expect_number("configuration value");
            if (std::rint(v) != v || v < -4 || v > 4)
                throw ParseError("configuration values must be integers in [-4, 4]", at);
            rt.conf[i] = static_cast<int>(v);
        }
        expect_kind(TokKind::RBracket, "']'");
        expect_kind(TokKind::Comma, "','");
        // external axes
        expect_kind(TokKind::LBracket, "'['");
        for (int i = 0; i < 6; ++i) {
            if (i > 0) expect_kind(TokKind::Comma, "','");
            rt.extax[i] = expect_number("external axis value");
        }
        expect_kind(TokKind::RBracket, "']'");
        expect_kind(TokKind::RBracket, "']'");
        return rt;
    }

    ProcAst parse_proc() {
        ProcAst proc;
        proc.pos = peek().pos;
        expect_keyword(Keyword::Proc);
        proc.name = expect_ident("procedure name");
        expect_kind(TokKind::LParen, "'('");
        expect_kind(TokKind::RParen, "')'");
        while (!at_keyword(Keyword::EndProc)) {
            if (peek().kind == TokKind::End) fail("'ENDPROC'", {"ENDPROC"});
            proc.statements.push_back(parse_statement());
        }
        expect_keyword(Keyword::EndProc);
        return proc;
    }

    Statement parse_statement() {
        if (peek().kind != TokKind::KeywordTok)
            fail("a statement", {"MoveL", "MoveJ", "MoveC", "WaitTime"});
        SourcePos pos = peek().pos;
        switch (peek().keyword) {
            case Keyword::MoveL: return parse_move(MoveKind::Linear, pos);
            case Keyword::MoveJ: return parse_move(MoveKind::Joint, pos);
            case Keyword::MoveC: return parse_move(MoveKind::Circular, pos);
            case Keyword::WaitTime: return parse_wait(pos);
            default: fail("a statement", {"MoveL", "MoveJ", "MoveC", "WaitTime"});
        }
    }

    Statement parse_move(MoveKind kind, SourcePos pos) {
        take();  // instruction keyword
        MoveStmt move;
        move.kind = kind;
        move.pos = pos;
        if (kind == MoveKind::Circular) {
            move.via = parse_target_expr();
            expect_kind(TokKind::Comma, "','");
        }
        move.target = parse_target_expr();
        expect_kind(TokKind::Comma, "','");
        move.speed = expect_ident("speed identifier");
        expect_kind(TokKind::Comma, "','");
        move.zone = expect_ident("zone identifier");
        expect_kind(TokKind::Comma, "','");
        move.tool = expect_ident("tool identifier");
        if (peek().kind == TokKind::Switch) {
            const Token& sw = take();
            if (!ident_equal(sw.text, "WObj"))
                throw ParseError("unknown argument switch '\\" + sw.text + "'", sw.pos, {"\\WObj:="});
            move.wobj = expect_ident("work-object identifier");
        }
        expect_kind(TokKind::Semicolon, "';'");
        return move;
    }

    Statement parse_wait(SourcePos pos) {
        take();  // WaitTime
        WaitStmt wait;
        wait.pos = pos;
        SourcePos at = peek().pos;
        wait.seconds = expect_number("wait time in seconds");
        if (wait.seconds < 0) throw ParseError("wait time must be non-negative", at);
        expect_kind(TokKind::Semicolon, "';'");
        return wait;
    }

    TargetExpr parse_target_expr() {
        if (at_keyword(Keyword::Offs)) {
            take();
            expect_kind(TokKind::LParen, "'('");
            OffsetTarget off;
            if (at_keyword(Keyword::Offs))
                throw ParseError("nested Offs is not allowed", peek().pos);
            off.name = expect_ident("target name");
            expect_kind(TokKind::Comma, "','");
            off.dx = expect_number("x offset");
            expect_kind(TokKind::Comma, "','");
            off.dy = expect_number("y offset");
            expect_kind(TokKind::Comma, "','");
            off.dz = expect_number("z offset");
            expect_kind(TokKind::RParen, "')'");
            return off;
        }
        if (peek().kind != TokKind::Ident) fail("a target expression", {"identifier", "Offs"});
        return NamedTarget{take().text};
    }

    void check_unique_declarations(const ModuleAst& mod) {
        std::set<std::string> seen;
        for (const auto& d : mod.declarations) {
            if (!seen.insert(fold_case(d.name)).second)
                throw ParseError("duplicate target declaration '" + d.name + "'", d.pos);
        }
    }
};

}  // namespace

ModuleAst parse_module(std::string_view source) { return Parser(source).run(); }

std::optional<ModuleAst> try_parse_module(std::string_view source, std::string* error) {
    try {
        return Parser(source).run();
    } catch (const Error& e) {
        if (error) *error = e.what();
        return std::nullopt;
    }
}

}  // namespace rapidbench
