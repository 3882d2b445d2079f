#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "s2g/model.hpp"

namespace s2g::sparql {

/// `?lhs op rhs`; the left side is always a variable.
struct Comparison {
    Var lhs;
    CmpOp op = CmpOp::Eq;
    std::variant<Literal, Var> rhs;
    bool operator==(const Comparison&) const = default;
};

/// FILTER expression tree. And/Or nodes have exactly two operands. A Regex
/// node stands for a whole FILTER that mentions REGEX; it keeps the
/// canonical token text and exists only so validation can reject it.
struct FilterExpr {
    enum class Kind { And, Or, Cmp, Regex };

    Kind kind = Kind::Cmp;
    std::vector<FilterExpr> operands;
    std::optional<Comparison> comparison;
    std::string regex_text;

    static FilterExpr make_and(FilterExpr l, FilterExpr r);
    static FilterExpr make_or(FilterExpr l, FilterExpr r);
    static FilterExpr make_cmp(Comparison c);
    static FilterExpr make_regex(std::string text);

    bool operator==(const FilterExpr&) const = default;
};

struct Filter {
    FilterExpr expr;
    bool operator==(const Filter&) const = default;
};

struct OptionalPattern {
    std::vector<Triple> triples;
    bool operator==(const OptionalPattern&) const = default;
};

struct GroupPattern;

/// `{ left } UNION { right }`; `branches` always holds two groups whose
/// elements are triples and filters only.
struct UnionPattern {
    std::vector<GroupPattern> branches;
    bool operator==(const UnionPattern&) const;
};

using PatternElement = std::variant<Triple, Filter, OptionalPattern, UnionPattern>;

struct GroupPattern {
    std::vector<PatternElement> elements;
    bool operator==(const GroupPattern&) const = default;
};

enum class ProjectionKind { Star, Vars, Count };

struct CountAggregate {
    std::string counted;
    std::string alias;
    bool operator==(const CountAggregate&) const = default;
};

/// SELECT clause. For Star, `vars` holds the expansion (variables of the
/// required patterns in first-appearance order). For Count, `vars` are the
/// plain variables listed before the aggregate, i.e. the group keys.
struct Projection {
    ProjectionKind kind = ProjectionKind::Vars;
    std::vector<std::string> vars;
    std::optional<CountAggregate> count;
    bool operator==(const Projection&) const = default;
};

enum class Direction { Asc, Desc };

struct OrderKey {
    std::string var;
    Direction direction = Direction::Asc;
    bool operator==(const OrderKey&) const = default;
};

struct PrefixDecl {
    std::string prefix;
    Iri ns;
    bool operator==(const PrefixDecl&) const = default;
};

struct SelectQuery {
    std::vector<PrefixDecl> prologue;
    bool distinct = false;
    Projection projection;
    GroupPattern where;
    std::vector<std::string> group_by;
    std::vector<OrderKey> order_by;
    std::optional<std::int64_t> limit;
    std::optional<std::int64_t> offset;

    bool operator==(const SelectQuery&) const = default;
};

/// Output column names in order: the projected variables, plus the COUNT
/// alias for aggregate queries.
std::vector<std::string> output_columns(const SelectQuery& query);

/// Every variable mentioned by a triple pattern anywhere in the group.
std::vector<std::string> pattern_vars(const GroupPattern& group);

std::vector<std::string> triple_vars(const Triple& triple);

}  // namespace s2g::sparql
