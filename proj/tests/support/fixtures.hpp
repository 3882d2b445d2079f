#pragma once

#include <string>

#include "s2g/corpus.hpp"
#include "s2g/engine.hpp"

namespace s2g::testing {

inline std::filesystem::path fixtures() { return S2G_FIXTURE_DIR; }

inline PropertyGraph load_fixture_graph(const std::string& name) {
    return engine::load_graph(corpus::read_file(corpus::graph_path(fixtures() / "graphs", name)));
}

}  // namespace s2g::testing
