#pragma once

#include "s2g/sparql/ast.hpp"

namespace s2g::sparql {

/// A SelectQuery that passed validate(). Only validate() can construct one.
class ValidatedQuery {
public:
    const SelectQuery& query() const noexcept { return query_; }
    bool operator==(const ValidatedQuery&) const = default;

private:
    friend ValidatedQuery validate(const SelectQuery& query);
    explicit ValidatedQuery(SelectQuery q) : query_(std::move(q)) {}
    SelectQuery query_;
};

/// Checks the restrictions of the supported SPARQL subset, in this order:
///
///  - no variable in predicate position (UnsupportedVariablePredicate)
///  - no REGEX in any FILTER (UnsupportedRegex)
///  - a UNION may only be accompanied by top-level FILTERs (UnsupportedUnionMix)
///  - projected names are pairwise distinct and the COUNT alias is fresh
///    (DuplicateProjection)
///  - every projected, grouped or counted variable occurs in a triple
///    pattern (ProjectedVarNotInPattern)
///  - GROUP BY keys equal the plain projected variables, and a COUNT with
///    projected keys requires GROUP BY (InvalidGroupBy)
///  - ORDER BY variables are projected (OrderByNotProjected)
///  - each UNION branch binds every projected variable (UnionBranchMissingVar)
///  - each OPTIONAL holds one triple `?s p ?o` where ?s is bound by an earlier
///    top-level triple and ?o occurs in no other triple (InvalidOptional)
///
/// Never modifies the query; validate(validate(q).query()) == validate(q).
ValidatedQuery validate(const SelectQuery& query);

}  // namespace s2g::sparql
