#pragma once

#include <string>
#include <vector>

#include "s2g/model.hpp"

namespace s2g {

using Row = std::vector<Value>;

/// Result of both evaluators: a multiset of rows, or a sequence when
/// `ordered` is set.
struct SolutionTable {
    std::vector<std::string> columns;
    std::vector<Row> rows;
    bool ordered = false;
};

/// Equal column sets and, after aligning columns, equal rows: as multisets,
/// or as sequences when both tables are ordered. Values compare with
/// same_term, so a VertexRef matches its vertex IRI.
bool solutions_equal(const SolutionTable& a, const SolutionTable& b);

/// Human-readable explanation of why two tables differ (empty when equal).
std::string describe_difference(const SolutionTable& a, const SolutionTable& b);

/// Cell text: vertices as their IRI, Unbound as the empty string, literals in
/// lexical form with tab/newline/backslash escaped.
std::string cell_text(const Value& value);

std::string format_tsv(const SolutionTable& table);
std::string format_table(const SolutionTable& table);

}  // namespace s2g
