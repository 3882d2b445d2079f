#include "s2g/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "s2g/error.hpp"

namespace s2g {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int sign(long double x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

// Exact comparison of two numeric literals (int64 fits in long double's
// 64-bit mantissa on the supported targets).
int numeric_compare(const Literal& a, const Literal& b) {
    if (a.kind() == LiteralKind::Integer && b.kind() == LiteralKind::Integer) {
        return a.as_integer() < b.as_integer() ? -1 : (a.as_integer() > b.as_integer() ? 1 : 0);
    }
    auto as_ld = [](const Literal& l) -> long double {
        return l.kind() == LiteralKind::Integer ? static_cast<long double>(l.as_integer())
                                                : static_cast<long double>(l.as_double());
    };
    return sign(as_ld(a) - as_ld(b));
}

int string_compare(const std::string& a, const std::string& b) {
    // Byte order of UTF-8 equals code point order.
    int c = a.compare(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string iri_text(const Value& v) {
    if (const auto* iri = std::get_if<Iri>(&v)) return iri->str();
    return vertex_iri(std::get<VertexRef>(v).id).str();
}

int rank(const Value& v) {
    return std::visit(Overloaded{
                          [](const Unbound&) { return 0; },
                          [](const Literal& l) {
                              switch (l.kind()) {
                                  case LiteralKind::Boolean: return 1;
                                  case LiteralKind::Integer:
                                  case LiteralKind::Double: return 2;
                                  case LiteralKind::String: return 3;
                              }
                              return 3;
                          },
                          [](const Iri&) { return 4; },
                          [](const VertexRef&) { return 4; },
                      },
                      v);
}

}  // namespace

// ---------------------------------------------------------------------------

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw std::invalid_argument("IRI must not be empty");
    for (char c : value_) {
        if (is_space(c) || c == '<' || c == '>') {
            throw std::invalid_argument("IRI contains an illegal character: " + value_);
        }
    }
}

Literal Literal::string(std::string value) { return Literal(Storage(std::in_place_type<std::string>, std::move(value))); }
Literal Literal::integer(std::int64_t value) { return Literal(Storage(std::in_place_type<std::int64_t>, value)); }
Literal Literal::real(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("double literal must be finite");
    return Literal(Storage(std::in_place_type<double>, value));
}
Literal Literal::boolean(bool value) { return Literal(Storage(std::in_place_type<bool>, value)); }

LiteralKind Literal::kind() const noexcept {
    switch (value_.index()) {
        case 0: return LiteralKind::String;
        case 1: return LiteralKind::Integer;
        case 2: return LiteralKind::Double;
        default: return LiteralKind::Boolean;
    }
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    std::string out(buf, end);
    if (out.find_first_of(".e") == std::string::npos) out += ".0";
    return out;
}

std::string lexical_form(const Literal& literal) {
    switch (literal.kind()) {
        case LiteralKind::String: return literal.as_string();
        case LiteralKind::Integer: return std::to_string(literal.as_integer());
        case LiteralKind::Double: return format_double(literal.as_double());
        case LiteralKind::Boolean: return literal.as_boolean() ? "true" : "false";
    }
    return {};
}

bool is_valid_var_name(std::string_view name) {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front())) return false;
    return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c); });
}

bool is_concrete(const Triple& triple) {
    return !std::holds_alternative<Var>(triple.s) && !std::holds_alternative<Var>(triple.p) &&
           !std::holds_alternative<Var>(triple.o);
}

// ---------------------------------------------------------------------------

std::string_view cmp_op_name(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "eq";
        case CmpOp::Neq: return "neq";
        case CmpOp::Lt: return "lt";
        case CmpOp::Gt: return "gt";
        case CmpOp::Lte: return "lte";
        case CmpOp::Gte: return "gte";
    }
    return "eq";
}

std::optional<CmpOp> cmp_op_from_name(std::string_view name) {
    for (CmpOp op : {CmpOp::Eq, CmpOp::Neq, CmpOp::Lt, CmpOp::Gt, CmpOp::Lte, CmpOp::Gte}) {
        if (cmp_op_name(op) == name) return op;
    }
    return std::nullopt;
}

bool same_term(const Value& a, const Value& b) {
    int ra = rank(a);
    if (ra != rank(b)) return false;
    switch (ra) {
        case 0: return true;
        case 4: return iri_text(a) == iri_text(b);
        default: break;
    }
    const auto& la = std::get<Literal>(a);
    const auto& lb = std::get<Literal>(b);
    if (la.is_numeric()) return numeric_compare(la, lb) == 0;
    return la == lb;
}

bool compare(CmpOp op, const Value& lhs, const Value& rhs) {
    if (std::holds_alternative<Unbound>(lhs) || std::holds_alternative<Unbound>(rhs)) return false;
    if (op == CmpOp::Eq) return same_term(lhs, rhs);
    if (op == CmpOp::Neq) return !same_term(lhs, rhs);

    const auto* la = std::get_if<Literal>(&lhs);
    const auto* lb = std::get_if<Literal>(&rhs);
    if (la == nullptr || lb == nullptr) return false;

    int c = 0;
    if (la->is_numeric() && lb->is_numeric()) {
        c = numeric_compare(*la, *lb);
    } else if (la->kind() == LiteralKind::String && lb->kind() == LiteralKind::String) {
        c = string_compare(la->as_string(), lb->as_string());
    } else if (la->kind() == LiteralKind::Boolean && lb->kind() == LiteralKind::Boolean) {
        c = static_cast<int>(la->as_boolean()) - static_cast<int>(lb->as_boolean());
    } else {
        return false;
    }
    switch (op) {
        case CmpOp::Lt: return c < 0;
        case CmpOp::Gt: return c > 0;
        case CmpOp::Lte: return c <= 0;
        case CmpOp::Gte: return c >= 0;
        default: return false;
    }
}

int order_compare(const Value& a, const Value& b) {
    int ra = rank(a);
    int rb = rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (ra) {
        case 0: return 0;
        case 1: {
            bool x = std::get<Literal>(a).as_boolean();
            bool y = std::get<Literal>(b).as_boolean();
            return static_cast<int>(x) - static_cast<int>(y);
        }
        case 2: return numeric_compare(std::get<Literal>(a), std::get<Literal>(b));
        case 3: return string_compare(std::get<Literal>(a).as_string(), std::get<Literal>(b).as_string());
        default: return string_compare(iri_text(a), iri_text(b));
    }
}

std::string canonical_key(const Value& value) {
    switch (rank(value)) {
        case 0: return "U";
        case 4: return "I" + iri_text(value);
        default: break;
    }
    const auto& lit = std::get<Literal>(value);
    switch (lit.kind()) {
        case LiteralKind::Boolean: return lit.as_boolean() ? "Btrue" : "Bfalse";
        case LiteralKind::String: return "S" + lit.as_string();
        case LiteralKind::Integer: return "N" + std::to_string(lit.as_integer());
        case LiteralKind::Double: {
            double d = lit.as_double();
            // Integral doubles inside int64 range share the integer key.
            if (std::trunc(d) == d && d >= -9.2233720368547758e18 && d < 9.2233720368547758e18) {
                return "N" + std::to_string(static_cast<std::int64_t>(d));
            }
            return "N" + format_double(d);
        }
    }
    return {};
}

Value to_value(const Literal& literal) { return Value(literal); }

// ---------------------------------------------------------------------------

PrefixTable::PrefixTable() {
    entries_.emplace("v", Iri(std::string(kVertexPropertyNs)));
    entries_.emplace("e", Iri(std::string(kEdgeNs)));
}

void PrefixTable::define(const std::string& prefix, Iri ns) {
    if (is_builtin(prefix)) {
        throw Error(ErrorCode::RedefinedBuiltinPrefix, "prefix '" + prefix + ":' is built in and cannot be redefined");
    }
    entries_.insert_or_assign(prefix, std::move(ns));
}

const Iri* PrefixTable::find(const std::string& prefix) const {
    auto it = entries_.find(prefix);
    return it == entries_.end() ? nullptr : &it->second;
}

Iri expand_prefix(std::string_view pname, const PrefixTable& table) {
    auto colon = pname.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::UnknownPrefix, "not a prefixed name: " + std::string(pname));
    }
    std::string prefix(pname.substr(0, colon));
    const Iri* ns = table.find(prefix);
    if (ns == nullptr) throw Error(ErrorCode::UnknownPrefix, "undefined prefix '" + prefix + ":'");
    return Iri(ns->str() + std::string(pname.substr(colon + 1)));
}

Iri vertex_iri(std::string_view id) { return Iri(std::string(kVertexNs) + std::string(id)); }

std::optional<std::string> vertex_id_of(const Iri& iri) {
    const auto& s = iri.str();
    if (s.size() <= kVertexNs.size() || s.compare(0, kVertexNs.size(), kVertexNs) != 0) return std::nullopt;
    return s.substr(kVertexNs.size());
}

bool is_valid_vertex_id(std::string_view id) {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

// ---------------------------------------------------------------------------

PropertyGraph::PropertyGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        if (!is_valid_vertex_id(v.id)) {
            throw Error(ErrorCode::GraphFormatError, "bad vertex id '" + v.id + "': ids must match [A-Za-z0-9_-]+");
        }
        if (!index_.emplace(v.id, i).second) {
            throw Error(ErrorCode::GraphFormatError, "duplicate vertex id '" + v.id + "'");
        }
        for (const auto& [key, value] : v.properties) {
            if (key.empty()) throw Error(ErrorCode::GraphFormatError, "empty property key on vertex '" + v.id + "'");
            if (key == kLabelKey) {
                throw Error(ErrorCode::GraphFormatError, "property key 'label' is reserved (vertex '" + v.id + "')");
            }
        }
    }
    out_.resize(vertices_.size());
    std::unordered_set<std::string> edge_ids;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (!is_valid_vertex_id(e.id)) {
            throw Error(ErrorCode::GraphFormatError, "bad edge id '" + e.id + "': ids must match [A-Za-z0-9_-]+");
        }
        if (!edge_ids.insert(e.id).second) throw Error(ErrorCode::GraphFormatError, "duplicate edge id '" + e.id + "'");
        if (e.label.empty()) throw Error(ErrorCode::GraphFormatError, "edge '" + e.id + "' has an empty label");
        auto from = index_.find(e.from);
        if (from == index_.end()) {
            throw Error(ErrorCode::GraphFormatError, "edge '" + e.id + "' has dangling endpoint '" + e.from + "'");
        }
        if (!index_.contains(e.to)) {
            throw Error(ErrorCode::GraphFormatError, "edge '" + e.id + "' has dangling endpoint '" + e.to + "'");
        }
        out_[from->second].push_back(i);
    }
}

std::optional<std::size_t> PropertyGraph::vertex_index(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const std::size_t> PropertyGraph::out_edges(std::size_t vertex_index) const {
    return out_.at(vertex_index);
}

std::size_t PropertyGraph::property_count() const {
    std::size_t n = 0;
    for (const auto& v : vertices_) n += v.properties.size();
    return n;
}

std::vector<Triple> pg_to_rdf_view(const PropertyGraph& graph) {
    std::vector<Triple> out;
    out.reserve(graph.vertices().size() + graph.property_count() + graph.edges().size());
    const std::string vp(kVertexPropertyNs);
    const std::string e(kEdgeNs);
    for (std::size_t i = 0; i < graph.vertices().size(); ++i) {
        const auto& v = graph.vertices()[i];
        Iri subject = vertex_iri(v.id);
        out.push_back({subject, Iri(vp + std::string(kLabelKey)), Literal::string(v.label)});
        for (const auto& [key, value] : v.properties) {
            out.push_back({subject, Iri(vp + key), value});
        }
        for (std::size_t ei : graph.out_edges(i)) {
            const auto& edge = graph.edges()[ei];
            out.push_back({subject, Iri(e + edge.label), vertex_iri(edge.to)});
        }
    }
    return out;
}

namespace {

std::string escape_nt_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string nt_term(const Term& term) {
    if (const auto* iri = std::get_if<Iri>(&term)) return "<" + iri->str() + ">";
    const auto& lit = std::get<Literal>(term);
    if (lit.kind() == LiteralKind::String) return "\"" + escape_nt_string(lit.as_string()) + "\"";
    return lexical_form(lit);
}

}  // namespace

std::string rdf_view_to_ntriples(std::span<const Triple> triples) {
    std::vector<std::string> lines;
    lines.reserve(triples.size());
    for (const auto& t : triples) {
        if (!is_concrete(t)) throw Error(ErrorCode::NonConcreteTriple, "triple contains a variable");
        lines.push_back(nt_term(t.s) + " " + nt_term(t.p) + " " + nt_term(t.o) + " .");
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace s2g
