#include "rapidbench/lexer.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

#include "rapidbench/ast.hpp"

namespace rapidbench {

const char* keyword_spelling(Keyword k) {
    switch (k) {
        case Keyword::Module: return "MODULE";
        case Keyword::EndModule: return "ENDMODULE";
        case Keyword::Proc: return "PROC";
        case Keyword::EndProc: return "ENDPROC";
        case Keyword::Const: return "CONST";
        case Keyword::RobTarget: return "robtarget";
        case Keyword::MoveL: return "MoveL";
        case Keyword::MoveJ: return "MoveJ";
        case Keyword::MoveC: return "MoveC";
        case Keyword::WaitTime: return "WaitTime";
        case Keyword::Offs: return "Offs";
    }
    return "";
}

namespace {

const std::map<std::string, Keyword>& keyword_table() {
    static const std::map<std::string, Keyword> table = {
        {"module", Keyword::Module},     {"endmodule", Keyword::EndModule},
        {"proc", Keyword::Proc},         {"endproc", Keyword::EndProc},
        {"const", Keyword::Const},       {"robtarget", Keyword::RobTarget},
        {"movel", Keyword::MoveL},       {"movej", Keyword::MoveJ},
        {"movec", Keyword::MoveC},       {"waittime", Keyword::WaitTime},
        {"offs", Keyword::Offs},
    };
    return table;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {
        // Tolerate a UTF-8 BOM.
        if (src_.size() >= 3 && src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (at_end()) break;
            out.push_back(next_token());
        }
        Token end;
        end.kind = TokKind::End;
        end.pos = here();
        out.push_back(end);
        return out;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    SourcePos here() const { return {line_, col_, pos_}; }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_trivia() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '!') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token next_token() {
        SourcePos start = here();
        char c = peek();

        if (is_ident_start(c)) return lex_ident(start);
        if (is_digit(c) || c == '.' || ((c == '+' || c == '-') && (is_digit(peek(1)) || peek(1) == '.')))
            return lex_number(start);

        switch (c) {
            case ',': advance(); return simple(TokKind::Comma, ",", start);
            case ';': advance(); return simple(TokKind::Semicolon, ";", start);
            case '(': advance(); return simple(TokKind::LParen, "(", start);
            case ')': advance(); return simple(TokKind::RParen, ")", start);
            case '[': advance(); return simple(TokKind::LBracket, "[", start);
            case ']': advance(); return simple(TokKind::RBracket, "]", start);
            case ':':
                if (peek(1) == '=') {
                    advance();
                    advance();
                    return simple(TokKind::Assign, ":=", start);
                }
                throw LexError("expected ':=' after ':'", start);
            case '\\': return lex_switch(start);
            default:
                throw LexError(std::string("character '") + c + "' is outside the subset alphabet", start);
        }
    }

    Token simple(TokKind kind, std::string text, SourcePos pos) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.pos = pos;
        return t;
    }

    Token lex_ident(SourcePos start) {
        std::string text;
        while (!at_end() && is_ident_char(peek())) text.push_back(advance());
        Token t;
        t.pos = start;
        t.text = text;
        auto it = keyword_table().find(fold_case(text));
        if (it != keyword_table().end()) {
            t.kind = TokKind::KeywordTok;
            t.keyword = it->second;
        } else {
            t.kind = TokKind::Ident;
        }
        return t;
    }

    Token lex_number(SourcePos start) {
        std::string text;
        if (peek() == '+' || peek() == '-') text.push_back(advance());
        bool digits = false;
        while (is_digit(peek())) {
            text.push_back(advance());
            digits = true;
        }
        if (peek() == '.') {
            text.push_back(advance());
            while (is_digit(peek())) {
                text.push_back(advance());
                digits = true;
            }
        }
        if (!digits) throw LexError("malformed numeral", start);
        if (peek() == 'e' || peek() == 'E') {
            // Exponent only when followed by digits; otherwise 'E' starts an identifier.
            std::size_t look = 1;
            if (peek(1) == '+' || peek(1) == '-') look = 2;
            if (is_digit(peek(look))) {
                text.push_back(advance());
                if (peek() == '+' || peek() == '-') text.push_back(advance());
                while (is_digit(peek())) text.push_back(advance());
            }
        }
        Token t;
        t.kind = TokKind::Number;
        t.text = text;
        t.number = std::strtod(text.c_str(), nullptr);
        t.pos = start;
        return t;
    }

    // "\Name:=", lexed as one switch token carrying the name.
    Token lex_switch(SourcePos start) {
        advance();  // backslash
        if (!is_ident_start(peek()))
            throw LexError("expected a switch name after '\\'", start);
        std::string name;
        while (!at_end() && is_ident_char(peek())) name.push_back(advance());
        while (peek() == ' ' || peek() == '\t') advance();
        if (!(peek() == ':' && peek(1) == '='))
            throw LexError("expected ':=' after switch name '\\" + name + "'", here());
        advance();
        advance();
        Token t;
        t.kind = TokKind::Switch;
        t.text = name;
        t.pos = start;
        return t;
    }
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace rapidbench
