#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rapidbench {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SourcePos {
    int line = 0;    // 1-based; 0 means "no position"
    int column = 0;  // 1-based
    std::size_t offset = 0;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Character outside the subset alphabet.
class LexError : public Error {
public:
    LexError(const std::string& msg, SourcePos pos)
        : Error(msg + " (line " + std::to_string(pos.line) + ", column " +
                std::to_string(pos.column) + ")"),
          pos(pos) {}
    SourcePos pos;
};

/// Syntax or structural error found while building the AST.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, SourcePos pos, std::vector<std::string> expected = {})
        : Error(msg + " (line " + std::to_string(pos.line) + ", column " +
                std::to_string(pos.column) + ")"),
          pos(pos),
          expected(std::move(expected)) {}
    SourcePos pos;
    std::vector<std::string> expected;
};

/// A referenced name could not be resolved during interpretation.
class UnresolvedName : public Error {
public:
    UnresolvedName(const std::string& name, const std::string& kind)
        : Error("unresolved " + kind + " '" + name + "'"), name(name), kind(kind) {}
    std::string name;
    std::string kind;
};

/// A speed identifier resolved to 0 mm/s.
class ZeroSpeed : public Error {
public:
    explicit ZeroSpeed(const std::string& name)
        : Error("speed '" + name + "' maps to 0 mm/s"), name(name) {}
    std::string name;
};

/// Transform selector matched no statement.
class SelectorMiss : public Error {
public:
    explicit SelectorMiss(const std::string& msg) : Error(msg) {}
};

/// ByTarget selector matched more than one statement where one is required.
class AmbiguousSelector : public Error {
public:
    explicit AmbiguousSelector(const std::string& msg) : Error(msg) {}
};

/// Instruction-mode reversal refused because the routine contains MoveC.
class CircularInInstructionMode : public Error {
public:
    explicit CircularInInstructionMode(const std::string& msg) : Error(msg) {}
};

/// Invalid configuration value or unreadable config/corpus.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Prompt example count does not match the requested shot count.
class ShotMismatch : public Error {
public:
    explicit ShotMismatch(const std::string& msg) : Error(msg) {}
};

/// Violated numeric-domain precondition (pass@k and friends).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Model endpoint could not be reached or gave an unusable response.
class TransportError : public Error {
public:
    explicit TransportError(const std::string& msg) : Error(msg) {}
};

}  // namespace rapidbench
