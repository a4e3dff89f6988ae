#pragma once

#include <string>

#include "rapidbench/ast.hpp"

namespace rapidbench {

/// Pretty-prints the subset syntax: one statement per line, declarations
/// before procedures, 4-space indentation inside PROC, LF line endings.
/// The output re-parses to an AST with equal CanonicalForm.
std::string print_module(const ModuleAst& mod);

/// Normalized rendering used for exact-match comparison: keywords
/// upper-cased, identifiers case-folded, whitespace collapsed, numerals in
/// canonical spelling (9E9 sentinel kept in exponent form).
struct CanonicalForm {
    std::string text;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonicalize(const ModuleAst& mod);

}  // namespace rapidbench
