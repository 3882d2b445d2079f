#include "s2g/error.hpp"

namespace s2g {

std::string_view code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownPrefix: return "UnknownPrefix";
        case ErrorCode::NonConcreteTriple: return "NonConcreteTriple";
        case ErrorCode::LexError: return "LexError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::RedefinedBuiltinPrefix: return "RedefinedBuiltinPrefix";
        case ErrorCode::UnsupportedVariablePredicate: return "UnsupportedVariablePredicate";
        case ErrorCode::UnsupportedRegex: return "UnsupportedRegex";
        case ErrorCode::DuplicateProjection: return "DuplicateProjection";
        case ErrorCode::OrderByNotProjected: return "OrderByNotProjected";
        case ErrorCode::InvalidGroupBy: return "InvalidGroupBy";
        case ErrorCode::ProjectedVarNotInPattern: return "ProjectedVarNotInPattern";
        case ErrorCode::UnionBranchMissingVar: return "UnionBranchMissingVar";
        case ErrorCode::InvalidOptional: return "InvalidOptional";
        case ErrorCode::UnsupportedUnionMix: return "UnsupportedUnionMix";
        case ErrorCode::UnknownPredicateNamespace: return "UnknownPredicateNamespace";
        case ErrorCode::IllTypedPattern: return "IllTypedPattern";
        case ErrorCode::UnsupportedDisjunction: return "UnsupportedDisjunction";
        case ErrorCode::BytecodeDecodeError: return "BytecodeDecodeError";
        case ErrorCode::GroovyDecodeError: return "GroovyDecodeError";
        case ErrorCode::GraphFormatError: return "GraphFormatError";
        case ErrorCode::MalformedTraversal: return "MalformedTraversal";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<SourcePos> pos,
             std::vector<std::string> expected)
    : std::runtime_error(message), code_(code), pos_(pos), expected_(std::move(expected)) {}

std::string Error::diagnostic() const {
    std::string out = "error: ";
    out += code_name(code_);
    out += ": ";
    out += what();
    if (pos_) {
        out += " at line " + std::to_string(pos_->line) + ", column " +
               std::to_string(pos_->column);
    }
    return out;
}

}  // namespace s2g
