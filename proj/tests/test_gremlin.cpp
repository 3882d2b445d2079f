#include <gtest/gtest.h>

#include <map>

#include "s2g/corpus.hpp"
#include "s2g/fuzz.hpp"
#include "s2g/gremlin/bytecode.hpp"
#include "s2g/gremlin/groovy.hpp"
#include "s2g/pipeline.hpp"
#include "support/errors.hpp"
#include "support/fixtures.hpp"

namespace s2g::gremlin {
namespace {

using testing::code_of;

Traversal names_traversal() {
    Traversal pattern{{step::As{"p"}, step::Values{"name"}, step::As{"n"}}};
    return Traversal{{step::V{}, step::Match{{pattern}}, step::Select{{"n"}}}};
}

TEST(Groovy, NamesQuery) {
    EXPECT_EQ(to_groovy(names_traversal()), "g.V().match(__.as('p').values('name').as('n')).select('n')");
}

TEST(Groovy, VAlone) {
    EXPECT_EQ(to_groovy(Traversal{{step::V{}}}), "g.V()");
    EXPECT_EQ(to_groovy(Traversal{}), "g");
}

TEST(Groovy, WhereFragment) {
    Traversal t{{step::V{}, step::Where{"a", Comparison{CmpOp::Gt, Literal::integer(25)}}}};
    EXPECT_EQ(to_groovy(t), "g.V().where('a', P.gt(25))");
}

TEST(Groovy, StepForms) {
    Traversal t{{step::V{},
                 step::Where{"x", VarComparison{CmpOp::Lt, "y"}},
                 step::Where{"x", AnyOf{{{CmpOp::Gt, Literal::integer(20)}, {CmpOp::Lt, Literal::integer(5)}}}},
                 step::Has{"name", {CmpOp::Eq, Literal::string("it's $5")}},
                 step::Order{{{"n", step::Direction::Asc}, {"m", step::Direction::Desc}}},
                 step::Range{1, 3},
                 step::Range{4, std::nullopt}}};
    EXPECT_EQ(to_groovy(t),
              "g.V().where('x', P.lt('y')).where('x', P.gt(20).or(P.lt(5)))"
              ".has('name', P.eq(\"it's \\$5\")).order().by('n', asc).by('m', desc).range(1, 3).range(4, -1)");
}

TEST(Groovy, CoalesceAndAggregates) {
    Traversal t{{step::V{},
                 step::Match{{Traversal{{step::As{"p"},
                                         step::Coalesce{{Traversal{{step::Values{"age"}}},
                                                         Traversal{{step::Constant{Unbound{}}}}}},
                                         step::As{"a"}}}}},
                 step::GroupCount{{"k"}, "y", "c"}}};
    EXPECT_EQ(to_groovy(t),
              "g.V().match(__.as('p').coalesce(__.values('age'), __.constant('urn:pg:unbound')).as('a'))"
              ".groupCount().by(__.select('k')).by(__.select('y').count()).as('c')");
    Traversal c{{step::V{}, step::Count{"y", "n"}}};
    EXPECT_EQ(to_groovy(c), "g.V().count().by(__.select('y')).as('n')");
}

TEST(Groovy, QuotedNames) {
    Traversal t{{step::V{}, step::Values{"it's"}}};
    EXPECT_EQ(to_groovy(t), "g.V().values('it\\'s')");
    EXPECT_EQ(from_groovy(to_groovy(t)), t);
}

TEST(Groovy, DecodeErrors) {
    EXPECT_EQ(code_of([] { from_groovy("g.V().bogus()"); }), ErrorCode::GroovyDecodeError);
    EXPECT_EQ(code_of([] { from_groovy("g.V().match("); }), ErrorCode::GroovyDecodeError);
    EXPECT_EQ(code_of([] { from_groovy("x.V()"); }), ErrorCode::GroovyDecodeError);
    EXPECT_EQ(code_of([] { from_groovy("g.V().as('a"); }), ErrorCode::GroovyDecodeError);
    EXPECT_EQ(code_of([] { from_groovy("g.V().range(3)"); }), ErrorCode::GroovyDecodeError);
}

TEST(Bytecode, SoleV) {
    EXPECT_EQ(to_bytecode(Traversal{{step::V{}}}), R"({"@type":"traversal","steps":[["V"]]})");
    EXPECT_EQ(from_bytecode(R"({"@type":"traversal","steps":[["V"]]})"), Traversal{{step::V{}}});
}

TEST(Bytecode, RangeInstruction) {
    auto text = to_bytecode(Traversal{{step::V{}, step::Range{1, 3}}});
    EXPECT_NE(text.find(R"(["range",1,3])"), std::string::npos) << text;
}

TEST(Bytecode, WhereInstruction) {
    auto text = to_bytecode(Traversal{{step::V{}, step::Where{"a", Comparison{CmpOp::Gt, Literal::integer(25)}}}});
    EXPECT_NE(text.find(R"(["where","a",{"@type":"P","op":"gt","value":25}])"), std::string::npos) << text;
}

TEST(Bytecode, MissingTypeIsError) {
    try {
        from_bytecode(R"({"steps":[]})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BytecodeDecodeError);
        EXPECT_NE(std::string(e.what()).find("@type"), std::string::npos) << e.what();
    }
}

TEST(Bytecode, ErrorsNameThePath) {
    try {
        from_bytecode(R"({"@type":"traversal","steps":[["V"],["where","a",{"@type":"P","op":"zz","value":1}]]})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BytecodeDecodeError);
        EXPECT_NE(std::string(e.what()).find("$.steps[1][2].op"), std::string::npos) << e.what();
    }
    for (const char* bad : {"", "[", "[]", R"({"@type":"x","steps":[]})", R"({"@type":"traversal"})",
                            R"({"@type":"traversal","steps":[["nope"]]})",
                            R"({"@type":"traversal","steps":[["range",3,1]]})",
                            R"({"@type":"traversal","steps":[["as"]]})",
                            R"({"@type":"traversal","steps":[["as",5]]})",
                            R"({"@type":"traversal","steps":[["V"]],"extra":1})"}) {
        EXPECT_EQ(code_of([&] { from_bytecode(bad); }), ErrorCode::BytecodeDecodeError) << bad;
    }
}

TEST(Bytecode, DoubleKeepsType) {
    Traversal t{{step::V{}, step::Has{"w", {CmpOp::Eq, Literal::real(2.0)}}}};
    auto back = from_bytecode(to_bytecode(t));
    EXPECT_EQ(back, t);
    EXPECT_EQ(std::get<step::Has>(back.steps[1]).pred.value.kind(), LiteralKind::Double);
}

TEST(Roundtrip, RandomTraversals) {
    fuzz::Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        Traversal t = fuzz::random_traversal(rng);
        ASSERT_FALSE(check_well_formed(t)) << to_groovy(t);
        ASSERT_EQ(from_bytecode(to_bytecode(t)), t) << to_bytecode(t);
        ASSERT_EQ(from_groovy(to_groovy(t)), t) << to_groovy(t);
    }
}

TEST(Roundtrip, EncodingIsInjective) {
    fuzz::Rng rng(77);
    std::map<std::string, Traversal> by_bytecode;
    std::map<std::string, Traversal> by_groovy;
    for (int i = 0; i < 500; ++i) {
        Traversal t = fuzz::random_traversal(rng);
        auto [b, b_new] = by_bytecode.emplace(to_bytecode(t), t);
        if (!b_new) {
            EXPECT_EQ(b->second, t);
        }
        auto [g, g_new] = by_groovy.emplace(to_groovy(t), t);
        if (!g_new) {
            EXPECT_EQ(g->second, t);
        }
    }
}

TEST(Golden, CorpusTranslationsAreByteStable) {
    auto entries = corpus::load_corpus(testing::fixtures());
    ASSERT_EQ(entries.size(), 30u);
    for (const auto& e : entries) {
        Traversal t = compile(e.query).traversal;
        auto golden = testing::fixtures() / "golden";
        EXPECT_EQ(to_groovy(t) + "\n", corpus::read_file(golden / (e.id + ".groovy"))) << e.id;
        EXPECT_EQ(to_bytecode(t) + "\n", corpus::read_file(golden / (e.id + ".gbc.json"))) << e.id;
        EXPECT_EQ(from_bytecode(to_bytecode(t)), t) << e.id;
        EXPECT_EQ(from_groovy(to_groovy(t)), t) << e.id;
    }
}

TEST(WellFormed, Problems) {
    EXPECT_FALSE(check_well_formed(names_traversal()));
    EXPECT_TRUE(check_well_formed(Traversal{{step::V{}, step::Range{3, 1}}}));
    EXPECT_TRUE(check_well_formed(Traversal{{step::V{}, step::Range{-1, 1}}}));
    EXPECT_TRUE(check_well_formed(Traversal{{step::V{}, step::V{}}}));
    EXPECT_TRUE(check_well_formed(Traversal{{step::V{}, step::Match{{Traversal{}}}}}));
    EXPECT_TRUE(check_well_formed(Traversal{{step::V{}, step::Match{{Traversal{{step::V{}}}}}}}));
    EXPECT_TRUE(check_well_formed(
        Traversal{{step::V{}, step::Where{"a", AnyOf{{{CmpOp::Eq, Literal::integer(1)}}}}}}));
}

TEST(CountSteps, Nested) {
    EXPECT_EQ(count_steps<step::As>(names_traversal()), 2u);
    EXPECT_EQ(count_steps<step::Match>(names_traversal()), 1u);
}

}  // namespace
}  // namespace s2g::gremlin
