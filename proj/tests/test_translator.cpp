#include <gtest/gtest.h>

#include <limits>

#include "s2g/corpus.hpp"
#include "s2g/oracle.hpp"
#include "s2g/pipeline.hpp"
#include "s2g/sparql/parser.hpp"
#include "s2g/translator.hpp"
#include "support/errors.hpp"
#include "support/fixtures.hpp"

namespace s2g::translator {
namespace {

using namespace gremlin;
using testing::code_of;

const Iri kName("urn:pg:vp:name");
const Iri kAge("urn:pg:vp:age");
const Iri kLabel("urn:pg:vp:label");
const Iri kKnows("urn:pg:e:knows");

Traversal translate(std::string_view text) { return compile(text).traversal; }

sparql::FilterExpr filter_of(std::string_view condition) {
    auto q = sparql::parse("SELECT ?a WHERE { ?p v:age ?a FILTER(" + std::string(condition) + ") }");
    return std::get<sparql::Filter>(q.where.elements[1]).expr;
}

TEST(Classify, Predicates) {
    EXPECT_EQ(classify_predicate(kName), PredicateKind(VertexProp{"name"}));
    EXPECT_EQ(classify_predicate(kLabel), PredicateKind(VertexLabel{}));
    EXPECT_EQ(classify_predicate(kKnows), PredicateKind(EdgeLabel{"knows"}));
    EXPECT_EQ(code_of([] { classify_predicate(Iri("http://example.org/p")); }),
              ErrorCode::UnknownPredicateNamespace);
    EXPECT_EQ(code_of([] { classify_predicate(Iri("urn:pg:vp:")); }), ErrorCode::UnknownPredicateNamespace);
}

TEST(Bgp, T1PropertyToVar) {
    EXPECT_EQ(translate_bgp({Var{"p"}, kName, Var{"n"}}),
              (Traversal{{step::As{"p"}, step::Values{"name"}, step::As{"n"}}}));
}

TEST(Bgp, T2PropertyToLiteral) {
    EXPECT_EQ(translate_bgp({Var{"p"}, kAge, Literal::integer(30)}),
              (Traversal{{step::As{"p"}, step::Has{"age", {CmpOp::Eq, Literal::integer(30)}}}}));
}

TEST(Bgp, T3LabelToVar) {
    EXPECT_EQ(translate_bgp({Var{"p"}, kLabel, Var{"l"}}), (Traversal{{step::As{"p"}, step::Label{}, step::As{"l"}}}));
}

TEST(Bgp, T4LabelToLiteral) {
    EXPECT_EQ(translate_bgp({Var{"p"}, kLabel, Literal::string("person")}),
              (Traversal{{step::As{"p"}, step::HasLabel{"person"}}}));
}

TEST(Bgp, T5EdgeToVar) {
    EXPECT_EQ(translate_bgp({Var{"a"}, kKnows, Var{"b"}}), (Traversal{{step::As{"a"}, step::Out{"knows"}, step::As{"b"}}}));
}

TEST(Bgp, T6EdgeToVertex) {
    EXPECT_EQ(translate_bgp({Var{"a"}, kKnows, vertex_iri("2")}),
              (Traversal{{step::As{"a"}, step::Out{"knows"}, step::HasId{"2"}}}));
}

TEST(Bgp, ConstantSubject) {
    EXPECT_EQ(translate_bgp({vertex_iri("1"), kAge, Literal::integer(30)}),
              (Traversal{{step::As{"_v0"}, step::HasId{"1"}, step::Has{"age", {CmpOp::Eq, Literal::integer(30)}}}}));
    FreshVars fresh;
    translate_bgp({vertex_iri("1"), kAge, Var{"a"}}, fresh);
    auto second = translate_bgp({vertex_iri("2"), kAge, Var{"b"}}, fresh);
    EXPECT_EQ(std::get<step::As>(second.steps[0]).name, "_v1");
}

TEST(Bgp, FreshNamesAvoidQueryVariables) {
    auto t = translate("SELECT ?_v0 ?_v1 WHERE { <urn:pg:v:1> e:knows ?_v0 . ?_v0 v:name ?_v1 }");
    const auto& first = std::get<step::Match>(t.steps[1]).patterns[0];
    EXPECT_EQ(std::get<step::As>(first.steps[0]).name, "_v2");
    auto g = testing::load_fixture_graph("g0");
    auto compiled = compile("SELECT ?_v0 WHERE { <urn:pg:v:1> e:knows ?_v0 }");
    EXPECT_TRUE(differential_check(compiled.query, compiled.traversal, g).agree);
}

TEST(Bgp, IllTyped) {
    EXPECT_EQ(code_of([] { translate_bgp({Var{"a"}, kKnows, Literal::integer(1)}); }), ErrorCode::IllTypedPattern);
    EXPECT_EQ(code_of([] { translate_bgp({Var{"a"}, kAge, vertex_iri("1")}); }), ErrorCode::IllTypedPattern);
    EXPECT_EQ(code_of([] { translate_bgp({Var{"a"}, kLabel, Literal::integer(1)}); }), ErrorCode::IllTypedPattern);
    EXPECT_EQ(code_of([] { translate_bgp({Iri("urn:x:y"), kAge, Var{"a"}}); }), ErrorCode::IllTypedPattern);
    EXPECT_EQ(code_of([] { translate_bgp({Var{"a"}, kKnows, Iri("urn:x:y")}); }), ErrorCode::IllTypedPattern);
    EXPECT_EQ(code_of([] { translate_bgp({Var{"a"}, Iri("urn:other:p"), Var{"b"}}); }),
              ErrorCode::UnknownPredicateNamespace);
}

TEST(Filter, Simple) {
    EXPECT_EQ(translate_filter(filter_of("?a > 25")),
              (std::vector<step::Where>{{"a", Comparison{CmpOp::Gt, Literal::integer(25)}}}));
}

TEST(Filter, ConjunctionFlattens) {
    EXPECT_EQ(translate_filter(filter_of("?a > 20 && ?a < 40")),
              (std::vector<step::Where>{{"a", Comparison{CmpOp::Gt, Literal::integer(20)}},
                                        {"a", Comparison{CmpOp::Lt, Literal::integer(40)}}}));
}

TEST(Filter, VarReference) {
    EXPECT_EQ(translate_filter(filter_of("?a <= ?b")), (std::vector<step::Where>{{"a", VarComparison{CmpOp::Lte, "b"}}}));
}

TEST(Filter, SameVarDisjunction) {
    auto w = translate_filter(filter_of("?a > 20 || ?a < 5 || ?a = 9"));
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0], (step::Where{"a", AnyOf{{{CmpOp::Gt, Literal::integer(20)},
                                                 {CmpOp::Lt, Literal::integer(5)},
                                                 {CmpOp::Eq, Literal::integer(9)}}}}));
}

TEST(Filter, UnsupportedDisjunction) {
    EXPECT_EQ(code_of([] { translate_filter(filter_of("?a > 20 || ?b < 5")); }), ErrorCode::UnsupportedDisjunction);
    EXPECT_EQ(code_of([] { translate_filter(filter_of("?a > 20 || ?a < ?b")); }), ErrorCode::UnsupportedDisjunction);
    EXPECT_EQ(code_of([] { translate_filter(filter_of("?a > 20 || (?a < 5 && ?a > 1)")); }),
              ErrorCode::UnsupportedDisjunction);
}

TEST(Query, NamesQuery) {
    EXPECT_EQ(translate("SELECT ?n WHERE { ?p v:name ?n }"),
              (Traversal{{step::V{},
                          step::Match{{Traversal{{step::As{"p"}, step::Values{"name"}, step::As{"n"}}}}},
                          step::Select{{"n"}}}}));
}

TEST(Query, Union) {
    auto branch = [](const char* label) {
        return Traversal{{step::Match{{Traversal{{step::As{"a"}, step::Out{label}, step::As{"b"}}}}}}};
    };
    EXPECT_EQ(translate("SELECT ?a ?b WHERE { {?a e:knows ?b} UNION {?a e:created ?b} }"),
              (Traversal{{step::V{}, step::Union{{branch("knows"), branch("created")}}, step::Select{{"a", "b"}}}}));
}

TEST(Query, LimitOffset) {
    auto t = translate("SELECT ?n WHERE { ?p v:name ?n } LIMIT 2 OFFSET 1");
    EXPECT_EQ(t.steps.back(), Step(step::Range{1, 3}));
    EXPECT_EQ(translate("SELECT ?n WHERE { ?p v:name ?n } LIMIT 4").steps.back(), Step(step::Range{0, 4}));
    EXPECT_EQ(translate("SELECT ?n WHERE { ?p v:name ?n } OFFSET 4").steps.back(),
              Step(step::Range{4, std::nullopt}));
    auto huge = translate("SELECT ?n WHERE { ?p v:name ?n } LIMIT 9223372036854775807 OFFSET 5");
    EXPECT_EQ(huge.steps.back(), Step(step::Range{5, std::numeric_limits<std::int64_t>::max()}));
}

TEST(Query, ModifierOrder) {
    auto t = translate(
        "SELECT DISTINCT ?n ?a WHERE { ?p v:name ?n . ?p v:age ?a FILTER(?a > 1) } ORDER BY DESC(?a) LIMIT 3");
    ASSERT_EQ(t.steps.size(), 7u);
    EXPECT_TRUE(std::holds_alternative<step::V>(t.steps[0]));
    EXPECT_TRUE(std::holds_alternative<step::Match>(t.steps[1]));
    EXPECT_TRUE(std::holds_alternative<step::Where>(t.steps[2]));
    EXPECT_EQ(t.steps[3], Step(step::Select{{"n", "a"}}));
    EXPECT_TRUE(std::holds_alternative<step::Dedup>(t.steps[4]));
    EXPECT_EQ(t.steps[5], Step(step::Order{{{"a", step::Direction::Desc}}}));
    EXPECT_EQ(t.steps[6], Step(step::Range{0, 3}));
}

TEST(Query, Aggregates) {
    auto grouped = translate("SELECT ?c (COUNT(?p) AS ?n) WHERE { ?p v:category ?c } GROUP BY ?c");
    EXPECT_EQ(grouped.steps.back(), Step(step::GroupCount{{"c"}, "p", "n"}));
    auto total = translate("SELECT (COUNT(?p) AS ?n) WHERE { ?p v:category ?c }");
    EXPECT_EQ(total.steps.back(), Step(step::Count{"p", "n"}));
    auto keys_only = translate("SELECT DISTINCT ?c WHERE { ?p v:category ?c } GROUP BY ?c");
    EXPECT_EQ(count_steps<step::Dedup>(keys_only), 1u);
    EXPECT_EQ(keys_only.steps.back(), Step(step::Dedup{}));
}

TEST(Query, Optional) {
    auto t = translate("SELECT ?n ?a WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } }");
    const auto& m = std::get<step::Match>(t.steps[1]);
    ASSERT_EQ(m.patterns.size(), 2u);
    EXPECT_EQ(m.patterns[1],
              (Traversal{{step::As{"p"},
                          step::Coalesce{{Traversal{{step::Values{"age"}}}, Traversal{{step::Constant{Unbound{}}}}}},
                          step::As{"a"}}}));
}

TEST(Query, VariableKindConflict) {
    EXPECT_EQ(code_of([] { translate("SELECT ?a WHERE { ?a e:knows ?b . ?c v:name ?b }"); }),
              ErrorCode::IllTypedPattern);
    EXPECT_EQ(code_of([] { translate("SELECT ?n WHERE { ?p v:name ?n . ?n v:age ?a }"); }),
              ErrorCode::IllTypedPattern);
}

TEST(Query, UnionBranchFilters) {
    auto t = translate("SELECT ?a WHERE { { ?a v:age ?x FILTER(?x > 3) } UNION { ?a v:age ?x } }");
    const auto& u = std::get<step::Union>(t.steps[1]);
    EXPECT_EQ(u.branches[0].steps.size(), 2u);
    EXPECT_EQ(u.branches[1].steps.size(), 1u);
}

TEST(Corpus, StructuralShape) {
    for (const auto& e : corpus::load_corpus(testing::fixtures())) {
        auto t = translate(e.query);
        EXPECT_FALSE(check_well_formed(t)) << e.id;
        if (e.feature_class == "S") {
            const auto& m = std::get<step::Match>(t.steps[1]);
            EXPECT_GE(m.patterns.size(), 10u) << e.id;
        }
        if (e.feature_class == "L") {
            EXPECT_EQ(count_steps<step::Range>(t), 1u) << e.id;
        }
    }
}

}  // namespace
}  // namespace s2g::translator
