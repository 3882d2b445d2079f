#pragma once

// RDF terms, the property graph, and the fixed RDF view that relates them.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace s2g {

inline constexpr std::string_view kVertexPropertyNs = "urn:pg:vp:";
inline constexpr std::string_view kEdgeNs = "urn:pg:e:";
inline constexpr std::string_view kVertexNs = "urn:pg:v:";
inline constexpr std::string_view kLabelKey = "label";

/// Absolute IRI, stored without angle brackets.
class Iri {
public:
    /// Throws std::invalid_argument on an empty value or one containing
    /// whitespace or angle brackets.
    explicit Iri(std::string value);

    const std::string& str() const noexcept { return value_; }

    bool operator==(const Iri&) const = default;
    auto operator<=>(const Iri&) const = default;

private:
    std::string value_;
};

enum class LiteralKind { String, Integer, Double, Boolean };

/// Scalar literal. operator== is structural (kind and value); use
/// same_term() for the value semantics where 30 and 30.0 are equal.
class Literal {
public:
    static Literal string(std::string value);
    static Literal integer(std::int64_t value);
    /// Throws std::invalid_argument if value is not finite.
    static Literal real(double value);
    static Literal boolean(bool value);

    LiteralKind kind() const noexcept;
    bool is_numeric() const noexcept {
        return kind() == LiteralKind::Integer || kind() == LiteralKind::Double;
    }

    const std::string& as_string() const { return std::get<std::string>(value_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
    double as_double() const { return std::get<double>(value_); }
    bool as_boolean() const { return std::get<bool>(value_); }

    bool operator==(const Literal&) const = default;

private:
    using Storage = std::variant<std::string, std::int64_t, double, bool>;
    explicit Literal(Storage value) : value_(std::move(value)) {}
    Storage value_;
};

/// Shortest round-trip decimal form, always carrying a '.' or exponent.
std::string format_double(double value);

/// Canonical lexical form: strings unquoted, numbers decimal, booleans
/// lowercase.
std::string lexical_form(const Literal& literal);

struct Unbound {
    bool operator==(const Unbound&) const = default;
};

/// A vertex on the property-graph side of a solution.
struct VertexRef {
    std::string id;
    bool operator==(const VertexRef&) const = default;
};

/// A solution value. Engine tables hold VertexRef where oracle tables hold
/// the vertex IRI; the comparator treats the two as the same term.
using Value = std::variant<Unbound, Literal, Iri, VertexRef>;

struct Var {
    std::string name;
    bool operator==(const Var&) const = default;
};

bool is_valid_var_name(std::string_view name);

using Term = std::variant<Iri, Literal, Var>;

struct Triple {
    Term s;
    Term p;
    Term o;
    bool operator==(const Triple&) const = default;
};

bool is_concrete(const Triple& triple);

// ---------------------------------------------------------------------------
// Value semantics shared by the traversal engine and the reference evaluator.

enum class CmpOp { Eq, Neq, Lt, Gt, Lte, Gte };

std::string_view cmp_op_name(CmpOp op);  // "eq", "neq", "lt", ...
std::optional<CmpOp> cmp_op_from_name(std::string_view name);

/// Term identity used for joins, DISTINCT and grouping: kind-sensitive except
/// that Integer and Double compare numerically, VertexRef(id) equals
/// Iri(vertex_iri(id)), and Unbound equals only Unbound.
bool same_term(const Value& a, const Value& b);

/// FILTER comparison. Unbound fails every comparison. Ordering operators are
/// defined between two numbers, two strings or two booleans; any other pair
/// compares false.
bool compare(CmpOp op, const Value& lhs, const Value& rhs);

/// ORDER BY total order: Unbound < Boolean < number < String < vertex.
/// Returns <0, 0 or >0. Consistent with same_term.
int order_compare(const Value& a, const Value& b);

/// Stable string key such that key(a) == key(b) iff same_term(a, b).
std::string canonical_key(const Value& value);

Value to_value(const Literal& literal);

// ---------------------------------------------------------------------------

/// Prefix map with the fixed built-ins `v:` and `e:`.
class PrefixTable {
public:
    PrefixTable();

    /// Throws Error(RedefinedBuiltinPrefix) for `v` or `e`.
    void define(const std::string& prefix, Iri ns);
    const Iri* find(const std::string& prefix) const;

    static bool is_builtin(std::string_view prefix) { return prefix == "v" || prefix == "e"; }

private:
    std::map<std::string, Iri> entries_;
};

/// `prefix:local` → namespace ⧺ local. Throws Error(UnknownPrefix).
Iri expand_prefix(std::string_view pname, const PrefixTable& table);

Iri vertex_iri(std::string_view id);
/// Inverse of vertex_iri for IRIs in the vertex namespace.
std::optional<std::string> vertex_id_of(const Iri& iri);

bool is_valid_vertex_id(std::string_view id);

struct Vertex {
    std::string id;
    std::string label;
    std::map<std::string, Literal> properties;
    bool operator==(const Vertex&) const = default;
};

struct Edge {
    std::string id;
    std::string label;
    std::string from;
    std::string to;
    bool operator==(const Edge&) const = default;
};

/// Immutable property graph. Vertices and edges keep their insertion order;
/// out-edge lists follow edge order.
class PropertyGraph {
public:
    PropertyGraph() = default;
    /// Throws Error(GraphFormatError) on duplicate or malformed ids, dangling
    /// endpoints, empty edge labels, or a `label` property key.
    PropertyGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::optional<std::size_t> vertex_index(std::string_view id) const;
    /// Indices into edges(), in edge order.
    std::span<const std::size_t> out_edges(std::size_t vertex_index) const;

    std::size_t property_count() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> out_;
};

/// RDF view of a graph. Triples are grouped by subject in vertex order: the
/// label triple, the property triples by key, then out-edges in edge order.
std::vector<Triple> pg_to_rdf_view(const PropertyGraph& graph);

/// N-Triples-style export, one sorted line per triple. Throws
/// Error(NonConcreteTriple) if any triple holds a variable.
std::string rdf_view_to_ntriples(std::span<const Triple> triples);

}  // namespace s2g
