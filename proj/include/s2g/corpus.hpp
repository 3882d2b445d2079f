#pragma once

// The bundled query corpus: ten feature classes, three queries each.

#include <filesystem>
#include <string>
#include <vector>

namespace s2g::corpus {

struct CorpusEntry {
    std::string id;             // e.g. "Gc2"
    std::string feature_class;  // e.g. "Gc"
    std::string dataset;        // graph file stem under graphs/
    std::string query;          // filled by load_corpus
};

/// The 30 entries in class order, without query text.
const std::vector<CorpusEntry>& manifest();

/// Ten class ids: C F L G Gc O U Op M S.
const std::vector<std::string>& feature_classes();

/// $SPARQL2GREMLIN_FIXTURES if set, else the source tree's fixtures/.
std::filesystem::path fixture_dir();

std::filesystem::path query_path(const std::filesystem::path& fixtures, const std::string& id);
std::filesystem::path graph_path(const std::filesystem::path& graph_dir, const std::string& dataset);

/// Manifest entries with their query text. Throws Error(IoError) if the
/// directory or a query file is missing.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& fixtures);

/// Whole file as a string. Throws Error(IoError).
std::string read_file(const std::filesystem::path& path);

}  // namespace s2g::corpus
