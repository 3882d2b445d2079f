#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "s2g/cli.hpp"
#include "s2g/gremlin/bytecode.hpp"
#include "s2g/pipeline.hpp"
#include "support/fixtures.hpp"

namespace s2g::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("s2g-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) {
        auto p = dir / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
    static std::string g0() { return (testing::fixtures() / "graphs" / "g0.json").string(); }
    static std::string query(const std::string& id) { return corpus::query_path(testing::fixtures(), id).string(); }
};

TEST_F(Cli, TranslateGroovy) {
    auto r = cli({"translate", query("C1"), "--emit", "groovy"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, corpus::read_file(testing::fixtures() / "golden" / "C1.groovy"));
    EXPECT_TRUE(r.err.empty());
}

TEST_F(Cli, TranslateBothAndFromStdin) {
    auto r = cli({"translate", "-", "--emit", "both"}, "SELECT ?n WHERE { ?p v:name ?n }");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
              "g.V().match(__.as('p').values('name').as('n')).select('n')\n"
              R"({"@type":"traversal","steps":[["V"],["match",{"@type":"traversal","steps":[["as","p"],["values","name"],["as","n"]]}],["select","n"]]})"
              "\n");
}

TEST_F(Cli, TranslateOutFileRoundtrips) {
    auto path = (dir / "c.gbc.json").string();
    auto r = cli({"translate", query("Op2"), "--emit", "bytecode", "--out", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    auto text = corpus::read_file(path);
    EXPECT_EQ(gremlin::from_bytecode(text), compile(corpus::read_file(query("Op2"))).traversal);
}

TEST_F(Cli, RejectsVariablePredicate) {
    auto r = cli({"translate", write("q.rq", "SELECT ?s WHERE { ?s ?p ?o }")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(r.err.starts_with("error: UnsupportedVariablePredicate: ")) << r.err;
}

TEST_F(Cli, RejectsRegex) {
    auto r = cli({"translate", write("q.rq", "SELECT ?n WHERE { ?p v:name ?n FILTER(REGEX(?n, \"a\")) }")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(r.err.starts_with("error: UnsupportedRegex: ")) << r.err;
}

TEST_F(Cli, RunNames) {
    auto r = cli({"run", write("q.rq", "SELECT ?n WHERE { ?p v:name ?n }"), "--graph", g0()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n\nalice\nbob\ngrem\n");
}

TEST_F(Cli, RunKnows) {
    auto r = cli({"run", write("q.rq", "SELECT ?a ?b WHERE { ?a e:knows ?b }"), "--graph", g0()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "a\tb\nurn:pg:v:1\turn:pg:v:2\n");
}

TEST_F(Cli, RunLimitZero) {
    auto r = cli({"run", write("q.rq", "SELECT ?n WHERE { ?p v:name ?n } LIMIT 0"), "--graph", g0()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n\n");
}

TEST_F(Cli, RunTableFormat) {
    auto r = cli({"run", write("q.rq", "SELECT ?n WHERE { ?p v:name ?n }"), "--graph", g0(), "--format", "table"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("alice"), std::string::npos);
    EXPECT_NE(r.out.find("3 row"), std::string::npos) << r.out;
}

TEST_F(Cli, RunBadGraph) {
    auto r = cli({"run", write("q.rq", "SELECT ?n WHERE { ?p v:name ?n }"), "--graph", write("g.json", "{")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.err.starts_with("error: GraphFormatError: ")) << r.err;
}

TEST_F(Cli, CheckCorpusEntry) {
    auto r = cli({"check", query("C1"), "--graph", g0()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "PASS: engine and oracle agree on 2 row(s)\n");
}

TEST_F(Cli, CheckForcedBrokenTraversal) {
    auto q = write("q.rq", "SELECT ?a ?b WHERE { ?a e:knows ?b }");
    auto broken = write("t.groovy", "g.V().match(__.as('a').out('created').as('b')).select('a','b')");
    auto r = cli({"check", q, "--graph", g0(), "--force-groovy", broken});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.starts_with("MISMATCH")) << r.out;

    auto bc = write("t.json", gremlin::to_bytecode(gremlin::Traversal{
                                  {gremlin::step::V{},
                                   gremlin::step::Match{{gremlin::Traversal{{gremlin::step::As{"a"},
                                                                             gremlin::step::Out{"knows"},
                                                                             gremlin::step::As{"b"}}}}},
                                   gremlin::step::Select{{"a", "b"}}, gremlin::step::Range{0, 0}}}));
    EXPECT_EQ(cli({"check", q, "--graph", g0(), "--force-bytecode", bc}).code, 2);
}

TEST_F(Cli, CheckInvalidQuery) {
    auto r = cli({"check", write("q.rq", "SELECT WHERE {"), "--graph", g0()});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.err.starts_with("error: ParseError: ")) << r.err;
}

TEST_F(Cli, CheckForceFlagsExclusive) {
    auto r = cli({"check", query("C1"), "--graph", g0(), "--force-groovy", "a", "--force-bytecode", "b"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.err.starts_with("error: UsageError: ")) << r.err;
}

TEST_F(Cli, CorpusDefault) {
    auto r = cli({"corpus"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 31);
    EXPECT_NE(r.out.find("Gc3 PASS\n"), std::string::npos);
    EXPECT_TRUE(r.out.ends_with("30/30 corpus queries passed\n"));
}

TEST_F(Cli, CorpusCorruptedGraph) {
    fs::copy_file(testing::fixtures() / "graphs" / "g0.json", dir / "g0.json");
    write("commerce.json", R"({"vertices":[{"id":"1","label":"x"}],"edges":[{"id":"e","label":"k","from":"1","to":"9"}]})");
    auto r = cli({"corpus", "--graph-dir", dir.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("C1 PASS\n"), std::string::npos);
    EXPECT_NE(r.out.find("C2 FAIL error: GraphFormatError"), std::string::npos) << r.out;
    EXPECT_TRUE(r.out.ends_with("3/30 corpus queries passed\n")) << r.out;
}

TEST_F(Cli, CorpusMissingFixtures) {
    auto r = cli({"corpus", "--graph-dir", (dir / "nope").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.err.starts_with("error: IoError: ")) << r.err;

    ::setenv("SPARQL2GREMLIN_FIXTURES", (dir / "missing").c_str(), 1);
    auto m = cli({"corpus"});
    ::unsetenv("SPARQL2GREMLIN_FIXTURES");
    EXPECT_EQ(m.code, 1);
    EXPECT_TRUE(m.err.starts_with("error: IoError: ")) << m.err;
}

TEST_F(Cli, FuzzDeterministic) {
    auto a = cli({"fuzz", "--seed", "42", "--count", "100"});
    auto b = cli({"fuzz", "--seed", "42", "--count", "100"});
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
}

TEST_F(Cli, FuzzUsageErrors) {
    auto r = cli({"fuzz", "--count", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.err.starts_with("error: UsageError: ")) << r.err;
    EXPECT_EQ(cli({"fuzz", "--max-vertices", "0"}).code, 1);
    EXPECT_EQ(cli({"fuzz", "--seed", "x"}).code, 1);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, 1);
    EXPECT_EQ(cli({"frobnicate"}).code, 1);
    EXPECT_EQ(cli({"run", query("C1")}).code, 1);
    EXPECT_EQ(cli({"translate", query("C1"), "--emit", "xml"}).code, 1);
    auto missing = cli({"translate", (dir / "none.rq").string()});
    EXPECT_EQ(missing.code, 1);
    EXPECT_TRUE(missing.err.starts_with("error: IoError: ")) << missing.err;
}

TEST_F(Cli, Help) {
    auto r = cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("translate"), std::string::npos);
}

TEST_F(Cli, Rdf) {
    auto r = cli({"rdf", "--graph", g0()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 11);
    EXPECT_NE(r.out.find("<urn:pg:v:1> <urn:pg:vp:age> 30 .\n"), std::string::npos);
}

TEST_F(Cli, ReplSession) {
    auto r = cli({"repl", "--graph", g0()},
                 "SELECT ?n\nWHERE { ?p v:name ?n }\n;\nthis is garbage\n;\nSELECT ?a WHERE { ?a e:knows ?b }\n;\n:quit\n"
                 "SELECT ?n WHERE { ?p v:name ?n }\n;\n");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("g.V().match(__.as('p').values('name').as('n')).select('n')\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("grem"), std::string::npos);
    EXPECT_NE(r.out.find("...> "), std::string::npos);
    EXPECT_NE(r.err.find("error: LexError: "), std::string::npos) << r.err;
    EXPECT_NE(r.out.find("urn:pg:v:1"), std::string::npos);
    // the query after :quit never runs
    EXPECT_EQ(r.out.find("select('n')", r.out.find("select('a')")), std::string::npos);
}

TEST_F(Cli, ReplEndOfInput) {
    auto r = cli({"repl", "--graph", g0()}, "SELECT ?n WHERE { ?p v:name ?n }\n");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find("alice"), std::string::npos);
}

}  // namespace
}  // namespace s2g::cli
