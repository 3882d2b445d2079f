#pragma once

// SPARQL AST → traversal IR.

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "s2g/gremlin/traversal.hpp"
#include "s2g/sparql/validate.hpp"

namespace s2g::translator {

struct VertexProp {
    std::string key;
    bool operator==(const VertexProp&) const = default;
};
struct VertexLabel {
    bool operator==(const VertexLabel&) const = default;
};
struct EdgeLabel {
    std::string label;
    bool operator==(const EdgeLabel&) const = default;
};
using PredicateKind = std::variant<VertexProp, VertexLabel, EdgeLabel>;

/// `urn:pg:vp:label` → VertexLabel, `urn:pg:vp:K` → VertexProp(K),
/// `urn:pg:e:L` → EdgeLabel(L). Throws Error(UnknownPredicateNamespace).
PredicateKind classify_predicate(const Iri& predicate);

/// Supplies `_v0`, `_v1`, ... for constant subjects.
/// Names `_v0`, `_v1`, ... skipping any name in `taken`.
class FreshVars {
public:
    FreshVars() = default;
    explicit FreshVars(std::set<std::string> taken) : taken_(std::move(taken)) {}

    std::string next() {
        std::string name;
        do {
            name = "_v" + std::to_string(counter_++);
        } while (taken_.contains(name));
        return name;
    }

private:
    std::set<std::string> taken_;
    int counter_ = 0;
};

/// One triple pattern → one single-step traversal starting with As(subject)
/// or As(fresh)·HasId(id). Throws Error(IllTypedPattern) when the object
/// does not fit the predicate kind, or Error(UnknownPredicateNamespace).
gremlin::Traversal translate_bgp(const Triple& triple, FreshVars& fresh);
gremlin::Traversal translate_bgp(const Triple& triple);

/// Conjunctions flatten into several Where steps. A disjunction is accepted
/// only when every alternative compares the same variable with a literal.
/// Throws Error(UnsupportedDisjunction).
std::vector<gremlin::step::Where> translate_filter(const sparql::FilterExpr& filter);

/// V · Match(SSTs ⧺ optionals) · Where* · (Select | Count | GroupCount) ·
/// Dedup? · Order? · Range?, or V · Union(...) · ... for a UNION query.
/// Also throws Error(IllTypedPattern) when a variable is used both as a
/// vertex and as a literal.
gremlin::Traversal translate_query(const sparql::ValidatedQuery& query);

}  // namespace s2g::translator
