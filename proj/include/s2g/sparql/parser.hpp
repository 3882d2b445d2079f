#pragma once

#include <string>
#include <string_view>

#include "s2g/sparql/ast.hpp"

namespace s2g::sparql {

/// Parses a SPARQL SELECT query:
///
///   Prologue  := (PREFIX pname: <iri>)*
///   Query     := SELECT DISTINCT? (Var+ | '*' | Var* CountAgg) WHERE Group
///                (GROUP BY Var+)? (ORDER BY OrderKey+)? Slice?
///   CountAgg  := '(' COUNT '(' Var ')' AS Var ')' | COUNT '(' Var ')' AS Var
///   Group     := '{' (Triple '.'? | FILTER '(' Expr ')' | OPTIONAL '{' Triples '}'
///                     | '{' Triples '}' UNION '{' Triples '}')* '}'
///   Slice     := LIMIT n (OFFSET n)? | OFFSET n (LIMIT n)?
///
/// Prefixed names are expanded against the built-ins plus the prologue.
/// Throws Error(LexError | ParseError | RedefinedBuiltinPrefix | UnknownPrefix).
SelectQuery parse(std::string_view text);

/// Canonical text form; parse(to_sparql(q)) == q for every parsed q.
std::string to_sparql(const SelectQuery& query);

}  // namespace s2g::sparql
