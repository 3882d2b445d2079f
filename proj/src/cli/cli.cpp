#include "s2g/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "s2g/corpus.hpp"
#include "s2g/engine.hpp"
#include "s2g/error.hpp"
#include "s2g/fuzz.hpp"
#include "s2g/gremlin/bytecode.hpp"
#include "s2g/gremlin/groovy.hpp"
#include "s2g/pipeline.hpp"

namespace s2g::cli {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kMismatch = 2;

std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return corpus::read_file(path);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
}

PropertyGraph read_graph(const std::string& path, std::istream& in) { return engine::load_graph(read_input(path, in)); }

int cmd_translate(const std::string& query_path, const std::string& emit, const std::string& out_path,
                  std::istream& in, std::ostream& out) {
    auto compiled = compile(read_input(query_path, in));
    std::string text;
    if (emit != "bytecode") text += gremlin::to_groovy(compiled.traversal) + "\n";
    if (emit != "groovy") text += gremlin::to_bytecode(compiled.traversal) + "\n";
    write_output(out_path, text, out);
    return kOk;
}

int cmd_run(const std::string& query_path, const std::string& graph_path, const std::string& format,
            std::istream& in, std::ostream& out) {
    auto compiled = compile(read_input(query_path, in));
    auto graph = read_graph(graph_path, in);
    auto table = engine::eval(compiled.traversal, graph);
    out << (format == "table" ? format_table(table) : format_tsv(table));
    return kOk;
}

void print_mismatch(const CheckResult& r, std::ostream& out) {
    out << "MISMATCH\nengine:\n" << format_table(r.engine) << "oracle:\n" << format_table(r.oracle) << r.difference
        << "\n";
}

int cmd_check(const std::string& query_path, const std::string& graph_path, const std::string& force_groovy,
              const std::string& force_bytecode, std::istream& in, std::ostream& out) {
    auto compiled = compile(read_input(query_path, in));
    auto graph = read_graph(graph_path, in);
    gremlin::Traversal traversal = compiled.traversal;
    if (!force_groovy.empty()) traversal = gremlin::from_groovy(corpus::read_file(force_groovy));
    if (!force_bytecode.empty()) traversal = gremlin::from_bytecode(corpus::read_file(force_bytecode));
    auto r = differential_check(compiled.query, traversal, graph);
    if (!r.agree) {
        print_mismatch(r, out);
        return kMismatch;
    }
    out << "PASS: engine and oracle agree on " << r.engine.rows.size() << " row(s)\n";
    return kOk;
}

int cmd_corpus(const std::string& graph_dir_opt, std::ostream& out) {
    auto fixtures = corpus::fixture_dir();
    auto entries = corpus::load_corpus(fixtures);
    std::filesystem::path graph_dir = graph_dir_opt.empty() ? fixtures / "graphs" : std::filesystem::path(graph_dir_opt);
    if (!std::filesystem::is_directory(graph_dir)) {
        throw Error(ErrorCode::IoError, "graph directory '" + graph_dir.string() + "' does not exist");
    }

    std::map<std::string, PropertyGraph> graphs;
    std::map<std::string, std::string> graph_errors;
    std::size_t passed = 0;
    for (const auto& e : entries) {
        std::string reason;
        if (!graphs.count(e.dataset) && !graph_errors.count(e.dataset)) {
            try {
                graphs.emplace(e.dataset, engine::load_graph(corpus::read_file(corpus::graph_path(graph_dir, e.dataset))));
            } catch (const Error& err) {
                graph_errors.emplace(e.dataset, err.diagnostic());
            }
        }
        if (auto it = graph_errors.find(e.dataset); it != graph_errors.end()) {
            reason = it->second;
        } else {
            try {
                auto compiled = compile(e.query);
                auto r = differential_check(compiled.query, compiled.traversal, graphs.at(e.dataset));
                if (!r.agree) reason = r.difference;
            } catch (const Error& err) {
                reason = err.diagnostic();
            }
        }
        if (reason.empty()) {
            ++passed;
            out << e.id << " PASS\n";
        } else {
            out << e.id << " FAIL " << reason << "\n";
        }
    }
    out << passed << "/" << entries.size() << " corpus queries passed\n";
    return passed == entries.size() ? kOk : kMismatch;
}

int cmd_fuzz(const fuzz::FuzzOptions& options, std::ostream& out) {
    if (options.count == 0) throw Error(ErrorCode::UsageError, "--count must be at least 1");
    if (options.max_vertices == 0) throw Error(ErrorCode::UsageError, "--max-vertices must be at least 1");
    auto summary = fuzz::run_fuzz(options, out);
    if (summary.mismatch) return kMismatch;
    if (summary.generator_error) return kInputError;
    return kOk;
}

int cmd_repl(const std::string& graph_path, std::istream& in, std::ostream& out, std::ostream& err) {
    auto graph = read_graph(graph_path, in);
    out << "Enter a query, then a line holding only ';'. :quit exits.\n";
    std::string buffer;
    std::string line;
    out << "s2g> " << std::flush;
    while (std::getline(in, line)) {
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
        if (buffer.empty() && trimmed == ":quit") return kOk;
        if (trimmed == ";") {
            try {
                auto compiled = compile(buffer);
                out << gremlin::to_groovy(compiled.traversal) << "\n";
                out << format_table(engine::eval(compiled.traversal, graph));
            } catch (const Error& e) {
                err << e.diagnostic() << "\n";
            }
            buffer.clear();
            out << "s2g> " << std::flush;
            continue;
        }
        buffer += line + "\n";
        out << "...> " << std::flush;
    }
    return kOk;
}

int cmd_rdf(const std::string& graph_path, std::istream& in, std::ostream& out) {
    auto graph = read_graph(graph_path, in);
    auto triples = pg_to_rdf_view(graph);
    out << rdf_view_to_ntriples(triples);
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Translate SPARQL SELECT queries into Gremlin traversals and check them against a reference "
                 "evaluator.",
                 "sparql2gremlin"};
    app.require_subcommand(1);

    std::string query, graph, emit = "groovy", out_path, format = "tsv", force_groovy, force_bytecode, graph_dir;
    fuzz::FuzzOptions fuzz_options;

    auto* translate = app.add_subcommand("translate", "Print the Gremlin translation of a query");
    translate->add_option("query", query, "Query file, or - for stdin")->required();
    translate->add_option("--emit", emit, "groovy, bytecode or both")
        ->check(CLI::IsMember({"groovy", "bytecode", "both"}));
    translate->add_option("--out", out_path, "Write to this file instead of stdout");

    auto* run = app.add_subcommand("run", "Translate a query and execute it on a graph");
    run->add_option("query", query, "Query file, or - for stdin")->required();
    run->add_option("--graph", graph, "Graph file")->required();
    run->add_option("--format", format, "tsv or table")->check(CLI::IsMember({"tsv", "table"}));

    auto* check = app.add_subcommand("check", "Compare the engine result with the reference evaluator");
    check->add_option("query", query, "Query file, or - for stdin")->required();
    check->add_option("--graph", graph, "Graph file")->required();
    auto* fg = check->add_option("--force-groovy", force_groovy, "Execute this Groovy traversal instead");
    auto* fb = check->add_option("--force-bytecode", force_bytecode, "Execute this bytecode traversal instead");
    fg->excludes(fb);

    auto* corpus_cmd = app.add_subcommand("corpus", "Check every bundled corpus query");
    corpus_cmd->add_option("--graph-dir", graph_dir, "Directory holding the dataset graphs");

    auto* fuzz_cmd = app.add_subcommand("fuzz", "Randomized engine/oracle comparison");
    fuzz_cmd->add_option("--seed", fuzz_options.seed, "Seed");
    fuzz_cmd->add_option("--count", fuzz_options.count, "Number of graph/query pairs");
    fuzz_cmd->add_option("--max-vertices", fuzz_options.max_vertices, "Largest generated graph");

    auto* repl = app.add_subcommand("repl", "Interactive session");
    repl->add_option("--graph", graph, "Graph file")->required();

    auto* rdf = app.add_subcommand("rdf", "Print the RDF view of a graph as N-Triples");
    rdf->add_option("--graph", graph, "Graph file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << code_name(ErrorCode::UsageError) << ": " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (*translate) return cmd_translate(query, emit, out_path, in, out);
        if (*run) return cmd_run(query, graph, format, in, out);
        if (*check) return cmd_check(query, graph, force_groovy, force_bytecode, in, out);
        if (*corpus_cmd) return cmd_corpus(graph_dir, out);
        if (*fuzz_cmd) return cmd_fuzz(fuzz_options, out);
        if (*repl) return cmd_repl(graph, in, out, err);
        if (*rdf) return cmd_rdf(graph, in, out);
    } catch (const Error& e) {
        err << e.diagnostic() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace s2g::cli
