#include "s2g/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "s2g/error.hpp"

#ifndef S2G_FIXTURE_DIR
#define S2G_FIXTURE_DIR "fixtures"
#endif

namespace s2g::corpus {

const std::vector<std::string>& feature_classes() {
    static const std::vector<std::string> classes{"C", "F", "L", "G", "Gc", "O", "U", "Op", "M", "S"};
    return classes;
}

const std::vector<CorpusEntry>& manifest() {
    static const std::vector<CorpusEntry> entries = [] {
        // C1, F1 and U1 run against the small example graph, the rest against
        // the commerce graph.
        std::vector<CorpusEntry> out;
        for (const auto& cls : feature_classes()) {
            for (int i = 1; i <= 3; ++i) {
                std::string id = cls + std::to_string(i);
                std::string dataset = (id == "C1" || id == "F1" || id == "U1") ? "g0" : "commerce";
                out.push_back({id, cls, dataset, {}});
            }
        }
        return out;
    }();
    return entries;
}

std::filesystem::path fixture_dir() {
    if (const char* env = std::getenv("SPARQL2GREMLIN_FIXTURES"); env != nullptr && *env != '\0') return env;
    return S2G_FIXTURE_DIR;
}

std::filesystem::path query_path(const std::filesystem::path& fixtures, const std::string& id) {
    return fixtures / "queries" / (id + ".rq");
}

std::filesystem::path graph_path(const std::filesystem::path& graph_dir, const std::string& dataset) {
    return graph_dir / (dataset + ".json");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& fixtures) {
    if (!std::filesystem::is_directory(fixtures)) {
        throw Error(ErrorCode::IoError, "fixture directory '" + fixtures.string() + "' does not exist");
    }
    std::vector<CorpusEntry> out = manifest();
    for (auto& e : out) e.query = read_file(query_path(fixtures, e.id));
    return out;
}

}  // namespace s2g::corpus
