#include "s2g/pipeline.hpp"

#include "s2g/engine.hpp"
#include "s2g/oracle.hpp"
#include "s2g/sparql/parser.hpp"
#include "s2g/translator.hpp"

namespace s2g {

Compiled compile(std::string_view sparql_text) {
    auto query = sparql::validate(sparql::parse(sparql_text));
    auto traversal = translator::translate_query(query);
    return {std::move(query), std::move(traversal)};
}

CheckResult differential_check(const sparql::ValidatedQuery& query, const gremlin::Traversal& traversal,
                               const PropertyGraph& graph) {
    CheckResult r;
    r.engine = engine::eval(traversal, graph);
    auto view = pg_to_rdf_view(graph);
    r.oracle = oracle::eval_sparql(query, view);
    r.agree = solutions_equal(r.engine, r.oracle);
    if (!r.agree) r.difference = describe_difference(r.engine, r.oracle);
    return r;
}

}  // namespace s2g
