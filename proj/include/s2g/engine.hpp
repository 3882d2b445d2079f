#pragma once

// In-memory execution of the traversal IR.

#include <string>
#include <string_view>

#include "s2g/gremlin/traversal.hpp"
#include "s2g/model.hpp"
#include "s2g/solution.hpp"

namespace s2g::engine {

/// Reads the graph file format:
///
///   {"vertices":[{"id":"1","label":"person","properties":{"age":30}}],
///    "edges":[{"id":"e1","label":"knows","from":"1","to":"2"}]}
///
/// Property values are strings, integers, doubles or booleans. "edges" and
/// "properties" may be omitted. Throws Error(GraphFormatError) on malformed
/// JSON, unknown or missing required fields, duplicate keys, and everything
/// PropertyGraph rejects.
PropertyGraph load_graph(std::string_view document);

/// Inverse of load_graph, with vertices and edges in graph order.
std::string dump_graph(const PropertyGraph& graph);

/// Runs a traversal shaped like translate_query output. Vertices appear in
/// the result as VertexRef. Throws Error(MalformedTraversal) when a step
/// cannot apply, e.g. out() on a literal or a traversal without a
/// projection step.
SolutionTable eval(const gremlin::Traversal& traversal, const PropertyGraph& graph);

}  // namespace s2g::engine
