#pragma once

#include <optional>
#include <string_view>

#include "rapidbench/ast.hpp"

namespace rapidbench {

/// Parses one module in the movement subset:
///
///   module := MODULE ident decl* proc* ENDMODULE
///   decl   := CONST robtarget ident := "[" pos "," orient "," conf "," extax "]" ";"
///   proc   := PROC ident "(" ")" stmt* ENDPROC
///   stmt   := (MoveL|MoveJ) texpr "," id "," id "," id [\WObj:=id] ";"
///           | MoveC texpr "," texpr "," id "," id "," id [\WObj:=id] ";"
///           | WaitTime num ";"
///   texpr  := ident | Offs "(" ident "," num "," num "," num ")"
///
/// Keywords are case-insensitive; identifier case is preserved. Target
/// resolution is not performed here (that is the validator's job).
/// Throws LexError / ParseError.
ModuleAst parse_module(std::string_view source);

/// Non-throwing variant; on failure returns nullopt and fills *error if given.
std::optional<ModuleAst> try_parse_module(std::string_view source, std::string* error = nullptr);

}  // namespace rapidbench
