#pragma once

// Reference SPARQL evaluation over a triple list: nested-loop joins and full
// materialization, written to be checked by reading.

#include <span>

#include "s2g/solution.hpp"
#include "s2g/sparql/validate.hpp"

namespace s2g::oracle {

/// All assignments of the pattern variables that map every pattern onto a
/// data triple. Columns are the variables in first-appearance order.
SolutionTable bgp_join(std::span<const Triple> patterns, std::span<const Triple> data);

/// Evaluates the query: pattern, filters, grouping/aggregation, projection,
/// DISTINCT, ORDER BY, then OFFSET/LIMIT. Vertices appear as their IRI.
SolutionTable eval_sparql(const sparql::ValidatedQuery& query, std::span<const Triple> data);

}  // namespace s2g::oracle
