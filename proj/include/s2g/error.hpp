#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace s2g {

/// Machine-readable error codes. The textual form (see code_name) is part of
/// the CLI contract: diagnostics are printed as `error: <CODE>: <message>`.
enum class ErrorCode {
    // core model
    UnknownPrefix,
    NonConcreteTriple,
    // lexer / parser
    LexError,
    ParseError,
    RedefinedBuiltinPrefix,
    // validation
    UnsupportedVariablePredicate,
    UnsupportedRegex,
    DuplicateProjection,
    OrderByNotProjected,
    InvalidGroupBy,
    ProjectedVarNotInPattern,
    UnionBranchMissingVar,
    InvalidOptional,
    UnsupportedUnionMix,
    // translation
    UnknownPredicateNamespace,
    IllTypedPattern,
    UnsupportedDisjunction,
    // serialization
    BytecodeDecodeError,
    GroovyDecodeError,
    // engine
    GraphFormatError,
    MalformedTraversal,
    // cli
    IoError,
    UsageError,
};

std::string_view code_name(ErrorCode code);

/// 1-based line/column plus the byte offset into the source text.
struct SourcePos {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    bool operator==(const SourcePos&) const = default;
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<SourcePos> pos = std::nullopt,
          std::vector<std::string> expected = {});

    ErrorCode code() const noexcept { return code_; }
    const std::optional<SourcePos>& position() const noexcept { return pos_; }
    /// Token kinds the parser would have accepted (ParseError only).
    const std::vector<std::string>& expected() const noexcept { return expected_; }

    /// `error: <CODE>: <message>` with an `at line L, column C` suffix when
    /// a position is known.
    std::string diagnostic() const;

private:
    ErrorCode code_;
    std::optional<SourcePos> pos_;
    std::vector<std::string> expected_;
};

}  // namespace s2g
