#include <gtest/gtest.h>

#include "s2g/corpus.hpp"
#include "s2g/engine.hpp"
#include "s2g/oracle.hpp"
#include "s2g/pipeline.hpp"
#include "s2g/sparql/parser.hpp"
#include "support/fixtures.hpp"

namespace s2g::oracle {
namespace {

// Expected rows are frozen from tests/oracles/derive_g0.py.

class G0View : public ::testing::Test {
protected:
    std::vector<Triple> data = pg_to_rdf_view(testing::load_fixture_graph("g0"));

    SolutionTable run(std::string_view text) { return eval_sparql(sparql::validate(sparql::parse(text)), data); }
};

Value lit(const char* s) { return to_value(Literal::string(s)); }
Value num(std::int64_t v) { return to_value(Literal::integer(v)); }

TEST_F(G0View, Names) {
    EXPECT_TRUE(solutions_equal(run("SELECT ?n WHERE { ?p v:name ?n }"),
                                SolutionTable{{"n"}, {{lit("alice")}, {lit("bob")}, {lit("grem")}}}));
}

TEST_F(G0View, Knows) {
    auto t = run("SELECT ?a ?b WHERE { ?a e:knows ?b }");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"a", "b"}, {{vertex_iri("1"), vertex_iri("2")}}}));
    EXPECT_TRUE(std::holds_alternative<Iri>(t.rows.at(0).at(0)));
}

TEST_F(G0View, LimitZero) {
    EXPECT_TRUE(run("SELECT ?n WHERE { ?p v:name ?n } LIMIT 0").rows.empty());
}

TEST_F(G0View, StarJoin) {
    std::vector<Triple> patterns{{Var{"p"}, Iri("urn:pg:vp:name"), Var{"n"}},
                                 {Var{"p"}, Iri("urn:pg:vp:age"), Var{"a"}}};
    auto t = bgp_join(patterns, data);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"p", "n", "a"}));
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"p", "n", "a"},
                                                 {{vertex_iri("1"), lit("alice"), num(30)},
                                                  {vertex_iri("2"), lit("bob"), num(25)}}}));
}

TEST_F(G0View, Unsatisfiable) {
    std::vector<Triple> patterns{{Var{"x"}, Iri("urn:pg:vp:name"), Literal::string("zz")}};
    EXPECT_TRUE(bgp_join(patterns, data).rows.empty());
}

TEST_F(G0View, AllConstantTriple) {
    std::vector<Triple> patterns{{vertex_iri("1"), Iri("urn:pg:vp:age"), Literal::integer(30)}};
    auto t = bgp_join(patterns, data);
    EXPECT_TRUE(t.columns.empty());
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_TRUE(t.rows[0].empty());
}

TEST_F(G0View, NumericConstantMatchesAcrossKinds) {
    std::vector<Triple> patterns{{Var{"p"}, Iri("urn:pg:vp:age"), Literal::real(30.0)}};
    EXPECT_EQ(bgp_join(patterns, data).rows.size(), 1u);
}

TEST_F(G0View, OptionalLeftJoin) {
    auto t = run("SELECT ?n ?a WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } }");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"n", "a"},
                                                 {{lit("alice"), num(30)}, {lit("bob"), num(25)}, {lit("grem"), Unbound{}}}}));
}

TEST_F(G0View, UnionAppends) {
    auto t = run("SELECT ?a ?b WHERE { { ?a e:knows ?b } UNION { ?a e:created ?b } }");
    EXPECT_EQ(t.rows.size(), 3u);
}

TEST_F(G0View, GroupCount) {
    auto t = run("SELECT ?b (COUNT(?a) AS ?c) WHERE { ?a e:created ?b } GROUP BY ?b");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"b", "c"}, {{vertex_iri("3"), num(2)}}}));
}

TEST_F(G0View, CountOfNothingIsZero) {
    auto t = run("SELECT (COUNT(?a) AS ?c) WHERE { ?a e:likes ?b }");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"c"}, {{num(0)}}}));
}

TEST_F(G0View, CountSkipsUnbound) {
    auto t = run("SELECT (COUNT(?a) AS ?c) WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } }");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"c"}, {{num(2)}}}));
}

TEST_F(G0View, FilterOrderSlice) {
    auto t = run("SELECT ?n ?a WHERE { ?p v:name ?n . ?p v:age ?a FILTER(?a > 20) } ORDER BY ASC(?a) LIMIT 1 OFFSET 1");
    EXPECT_TRUE(t.ordered);
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"n", "a"}, {{lit("alice"), num(30)}}, true}));
}

TEST_F(G0View, DistinctAndUnboundFilter) {
    EXPECT_EQ(run("SELECT DISTINCT ?b WHERE { ?a e:created ?b }").rows.size(), 1u);
    auto t = run("SELECT ?n WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } FILTER(?a != 30) }");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"n"}, {{lit("bob")}}}));
}

TEST(Differential, CorpusAgrees) {
    for (const auto& e : corpus::load_corpus(testing::fixtures())) {
        auto compiled = compile(e.query);
        auto g = testing::load_fixture_graph(e.dataset);
        auto r = differential_check(compiled.query, compiled.traversal, g);
        EXPECT_TRUE(r.agree) << e.id << "\n" << r.difference;
        EXPECT_FALSE(r.oracle.rows.empty()) << e.id;
        if (e.feature_class == "O") {
            EXPECT_TRUE(r.engine.ordered && r.oracle.ordered) << e.id;
        }
    }
}

}  // namespace
}  // namespace s2g::oracle
