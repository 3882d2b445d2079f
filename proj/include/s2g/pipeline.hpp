#pragma once

// Text → validated AST → traversal, and the engine-versus-oracle comparison.

#include <string>
#include <string_view>

#include "s2g/gremlin/traversal.hpp"
#include "s2g/solution.hpp"
#include "s2g/sparql/validate.hpp"

namespace s2g {

struct Compiled {
    sparql::ValidatedQuery query;
    gremlin::Traversal traversal;
};

/// parse → validate → translate_query. Throws s2g::Error.
Compiled compile(std::string_view sparql_text);

struct CheckResult {
    SolutionTable engine;
    SolutionTable oracle;
    bool agree = false;
    std::string difference;  // empty when agree
};

/// Evaluates `traversal` on the engine and `query` on the RDF view of the
/// same graph, and compares the two tables.
CheckResult differential_check(const sparql::ValidatedQuery& query, const gremlin::Traversal& traversal,
                               const PropertyGraph& graph);

}  // namespace s2g
