#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rapidbench/errors.hpp"

namespace rapidbench {

enum class Keyword {
    Module,
    EndModule,
    Proc,
    EndProc,
    Const,
    RobTarget,
    MoveL,
    MoveJ,
    MoveC,
    WaitTime,
    Offs,
};

const char* keyword_spelling(Keyword k);  // conventional RAPID casing

enum class TokKind {
    KeywordTok,
    Ident,
    Number,
    Comma,
    Semicolon,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Assign,   // :=
    Switch,   // \Name:=  (text carries the name)
    End,
};

struct Token {
    TokKind kind = TokKind::End;
    std::string text;        // identifier/number/switch-name spelling as written
    double number = 0;       // valid for Number
    Keyword keyword{};       // valid for KeywordTok
    SourcePos pos;
};

/// Splits source into tokens. Comments ("!" to end of line) and whitespace are
/// discarded; a final End token is appended. Throws LexError on characters
/// outside the subset alphabet.
std::vector<Token> tokenize(std::string_view source);

}  // namespace rapidbench
