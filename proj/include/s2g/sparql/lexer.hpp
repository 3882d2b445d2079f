#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "s2g/error.hpp"
#include "s2g/model.hpp"

namespace s2g::sparql {

enum class Keyword {
    Select, Distinct, Where, Filter, Optional, Union, Group, By, Order,
    Asc, Desc, Limit, Offset, Count, As, Prefix, Regex,
};

std::string_view keyword_text(Keyword kw);

enum class TokenKind {
    Keyword,
    Var,       // text = name without '?'
    PName,     // text = "prefix:local" as written
    IriRef,    // text = IRI without brackets
    String,    // literal holds the unescaped value
    Integer,
    Double,
    Boolean,
    LBrace, RBrace, LParen, RParen,
    Dot, Comma, Semicolon, Star, Bang,
    AndAnd, OrOr,
    Eq, Neq, Lt, Gt, Le, Ge,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    Keyword keyword = Keyword::Select;     // valid when kind == Keyword
    std::optional<Literal> literal;        // String/Integer/Double/Boolean
    SourcePos pos;
};

/// Canonical source text of a token (keywords upper-case, literals in
/// canonical form). Re-lexing the result yields an equal token.
std::string render_token(const Token& token);

/// Human name of a token kind for diagnostics, e.g. "'{'" or "variable".
std::string describe(TokenKind kind);

/// Splits SPARQL text into tokens, ending with an End token positioned at the
/// end of input. Keywords are case-insensitive; `#` starts a comment.
/// Throws Error(LexError) with the offending position.
std::vector<Token> tokenize(std::string_view text);

}  // namespace s2g::sparql
