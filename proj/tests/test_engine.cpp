#include <gtest/gtest.h>

#include <algorithm>

#include "s2g/engine.hpp"
#include "s2g/fuzz.hpp"
#include "s2g/gremlin/groovy.hpp"
#include "s2g/pipeline.hpp"
#include "s2g/translator.hpp"
#include "support/errors.hpp"
#include "support/fixtures.hpp"
#include "support/naive.hpp"

namespace s2g::engine {
namespace {

using namespace gremlin;
using testing::code_of;

// Reference values below were computed by tests/oracles/derive_g0.py, a
// brute-force enumeration over g0.json that shares no code with the engine.

class G0 : public ::testing::Test {
protected:
    PropertyGraph g = testing::load_fixture_graph("g0");

    SolutionTable run(std::string_view groovy) { return eval(from_groovy(groovy), g); }
};

Value lit(const char* s) { return to_value(Literal::string(s)); }

TEST(LoadGraph, G0Counts) {
    auto g = testing::load_fixture_graph("g0");
    EXPECT_EQ(g.vertices().size(), 3u);
    EXPECT_EQ(g.edges().size(), 3u);
    EXPECT_EQ(g.property_count(), 5u);
}

TEST(LoadGraph, EmptyGraph) {
    auto g = load_graph(R"({"vertices":[],"edges":[]})");
    EXPECT_TRUE(g.vertices().empty());
    EXPECT_TRUE(g.edges().empty());
}

TEST(LoadGraph, Errors) {
    const char* dangling =
        R"({"vertices":[{"id":"1","label":"a","properties":{}}],"edges":[{"id":"e","label":"k","from":"9","to":"1"}]})";
    for (const char* bad : {
             dangling,
             "",
             "[]",
             R"({"edges":[]})",
             R"({"vertices":[],"edges":[],"extra":1})",
             R"({"vertices":[],"vertices":[],"edges":[]})",
             R"({"vertices":[{"id":"1","label":"a","properties":{"k":1,"k":2}}],"edges":[]})",
             R"({"vertices":[{"id":"1","label":"a","properties":{"k":null}}],"edges":[]})",
             R"({"vertices":[{"id":"1","label":"a","properties":{"k":[1]}}],"edges":[]})",
             R"({"vertices":[{"id":"1","label":"a","properties":{"k":18446744073709551615}}],"edges":[]})",
             R"({"vertices":[{"id":1,"label":"a","properties":{}}],"edges":[]})",
             R"({"vertices":[{"id":"1","properties":{}}],"edges":[]})",
         }) {
        EXPECT_EQ(code_of([&] { load_graph(bad); }), ErrorCode::GraphFormatError) << bad;
    }
}

TEST(LoadGraph, OptionalMembers) {
    auto g = load_graph(R"({"vertices":[{"id":"1","label":"a"}]})");
    EXPECT_EQ(g.vertices().size(), 1u);
    EXPECT_TRUE(g.vertices()[0].properties.empty());
    EXPECT_TRUE(g.edges().empty());
}

TEST(LoadGraph, DumpRoundtrip) {
    auto g = testing::load_fixture_graph("commerce");
    auto again = load_graph(dump_graph(g));
    EXPECT_EQ(again.vertices(), g.vertices());
    EXPECT_EQ(again.edges(), g.edges());
    EXPECT_EQ(dump_graph(again), dump_graph(g));
}

TEST_F(G0, Knows) {
    auto t = run("g.V().match(__.as('a').out('knows').as('b')).select('a','b')");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"a", "b"}, {{VertexRef{"1"}, VertexRef{"2"}}}}));
}

TEST_F(G0, Names) {
    auto t = run("g.V().match(__.as('p').values('name').as('n')).select('n')");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"n"}, {{lit("alice")}, {lit("bob")}, {lit("grem")}}}));
}

TEST_F(G0, GroupCountCreatedByTarget) {
    auto t = run(
        "g.V().match(__.as('a').out('created').as('b')).groupCount().by(__.select('b')).by(__.select('a').count())"
        ".as('c')");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"b", "c"}, {{VertexRef{"3"}, to_value(Literal::integer(2))}}}));
}

TEST_F(G0, EmptyRange) {
    auto t = run("g.V().match(__.as('p').values('name').as('n')).select('n').range(0, 0)");
    EXPECT_TRUE(t.rows.empty());
    EXPECT_EQ(t.columns, std::vector<std::string>{"n"});
}

TEST_F(G0, DedupIdempotent) {
    auto once = run("g.V().match(__.as('a').out('created').as('b')).select('b').dedup()");
    auto twice = run("g.V().match(__.as('a').out('created').as('b')).select('b').dedup().dedup()");
    EXPECT_EQ(once.rows.size(), 1u);
    EXPECT_TRUE(solutions_equal(once, twice));
}

TEST_F(G0, CountAndOrder) {
    auto c = run("g.V().match(__.as('p').values('age').as('a')).count().by(__.select('p')).as('n')");
    EXPECT_TRUE(solutions_equal(c, SolutionTable{{"n"}, {{to_value(Literal::integer(2))}}}));
    auto o = run("g.V().match(__.as('p').values('name').as('n')).select('n').order().by('n', desc)");
    EXPECT_TRUE(o.ordered);
    ASSERT_EQ(o.rows.size(), 3u);
    EXPECT_TRUE(same_term(o.rows[0][0], lit("grem")));
    EXPECT_TRUE(same_term(o.rows[2][0], lit("alice")));
}

TEST_F(G0, OptionalYieldsUnbound) {
    auto t = run(
        "g.V().match(__.as('p').values('name').as('n'), "
        "__.as('p').coalesce(__.values('age'), __.constant('urn:pg:unbound')).as('a')).select('n','a')");
    EXPECT_TRUE(solutions_equal(t, SolutionTable{{"n", "a"},
                                                 {{lit("alice"), to_value(Literal::integer(30))},
                                                  {lit("bob"), to_value(Literal::integer(25))},
                                                  {lit("grem"), Unbound{}}}}));
}

TEST_F(G0, Malformed) {
    EXPECT_EQ(code_of([&] { run("g.V().match(__.as('p').values('name').as('n'))"); }),
              ErrorCode::MalformedTraversal);
    EXPECT_EQ(code_of([&] { run("g.V().match(__.as('p').values('name').out('knows').as('n')).select('n')"); }),
              ErrorCode::MalformedTraversal);
    EXPECT_EQ(code_of([&] { run("g.V().select('n').match(__.as('p'))"); }), ErrorCode::MalformedTraversal);
    EXPECT_EQ(code_of([&] { eval(Traversal{{step::V{}, step::Range{2, 1}}}, g); }), ErrorCode::MalformedTraversal);
    EXPECT_EQ(code_of([&] { eval(Traversal{}, g); }), ErrorCode::MalformedTraversal);
}

TEST(SinglePattern, MatchesNaiveEnumeration) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        fuzz::Rng rng(seed);
        auto g = fuzz::random_graph(rng, 15);
        for (int i = 0; i < 10; ++i) {
            Triple t = testing::random_pattern(rng, g);
            auto vars = testing::vars_of({t});
            if (vars.empty()) continue;
            auto got = eval(testing::match_traversal({translator::translate_bgp(t)}, vars), g);
            auto want = testing::naive_single_pattern(g, t);
            ASSERT_TRUE(solutions_equal(got, want)) << "seed " << seed << "\n" << describe_difference(got, want);
        }
    }
}

TEST(MatchOrder, PermutationInvariant) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        fuzz::Rng rng(seed + 1000);
        auto g = fuzz::random_graph(rng, 15);
        std::vector<Triple> patterns;
        for (int i = 0; i < 3; ++i) patterns.push_back(testing::random_pattern(rng, g));
        auto vars = testing::vars_of(patterns);
        if (vars.empty()) continue;
        std::vector<std::size_t> order{0, 1, 2};
        std::optional<SolutionTable> first;
        do {
            translator::FreshVars fresh;
            std::vector<Traversal> ssts;
            for (auto i : order) ssts.push_back(translator::translate_bgp(patterns[i], fresh));
            auto table = eval(testing::match_traversal(ssts, vars), g);
            if (!first) {
                first = table;
            } else {
                ASSERT_TRUE(solutions_equal(*first, table)) << "seed " << seed;
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

}  // namespace
}  // namespace s2g::engine
