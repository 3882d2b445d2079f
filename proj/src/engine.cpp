#include "s2g/engine.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>
#include <utility>

#include "json.hpp"
#include "s2g/error.hpp"

namespace s2g::engine {

namespace g = gremlin;
using json = nlohmann::json;

// -- graph file ----------------------------------------------------------------

namespace {

[[noreturn]] void format_error(const std::string& msg) { throw Error(ErrorCode::GraphFormatError, msg); }

void only_fields(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            format_error(where + ": unknown field '" + key + "'");
        }
    }
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) format_error(where + ": missing field '" + key + "'");
    if (!it->is_string()) format_error(where + ": field '" + key + "' must be a string");
    return it->get<std::string>();
}

Literal property_value(const json& v, const std::string& where) {
    switch (v.type()) {
        case json::value_t::string: return Literal::string(v.get<std::string>());
        case json::value_t::boolean: return Literal::boolean(v.get<bool>());
        case json::value_t::number_integer: return Literal::integer(v.get<std::int64_t>());
        case json::value_t::number_unsigned: {
            auto u = v.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                format_error(where + ": integer out of range");
            }
            return Literal::integer(static_cast<std::int64_t>(u));
        }
        case json::value_t::number_float: return Literal::real(v.get<double>());
        default: format_error(where + ": property values must be strings, numbers or booleans");
    }
}

json parse_strict(std::string_view document) {
    // nlohmann keeps the last of two equal keys; track keys per open object.
    std::vector<std::set<std::string>> open_objects;
    std::string duplicate;
    json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start: open_objects.emplace_back(); break;
            case json::parse_event_t::object_end: open_objects.pop_back(); break;
            case json::parse_event_t::key:
                if (!open_objects.back().insert(parsed.get<std::string>()).second && duplicate.empty()) {
                    duplicate = parsed.get<std::string>();
                }
                break;
            default: break;
        }
        return true;
    };
    json doc;
    try {
        doc = json::parse(document.begin(), document.end(), cb);
    } catch (const json::exception& e) {
        format_error(std::string("invalid JSON: ") + e.what());
    }
    if (!duplicate.empty()) format_error("duplicate key '" + duplicate + "'");
    return doc;
}

}  // namespace

PropertyGraph load_graph(std::string_view document) {
    json doc = parse_strict(document);
    if (!doc.is_object()) format_error("graph document must be an object");
    only_fields(doc, {"vertices", "edges"}, "graph");

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    if (!doc.contains("vertices")) format_error("graph: missing field 'vertices'");
    if (auto it = doc.find("vertices"); it != doc.end()) {
        if (!it->is_array()) format_error("'vertices' must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& jv = (*it)[i];
            std::string where = "vertices[" + std::to_string(i) + "]";
            if (!jv.is_object()) format_error(where + " must be an object");
            only_fields(jv, {"id", "label", "properties"}, where);
            Vertex v{string_field(jv, "id", where), string_field(jv, "label", where), {}};
            if (auto props = jv.find("properties"); props != jv.end()) {
                if (!props->is_object()) format_error(where + ": 'properties' must be an object");
                for (const auto& [key, value] : props->items()) {
                    v.properties.emplace(key, property_value(value, where + ".properties." + key));
                }
            }
            vertices.push_back(std::move(v));
        }
    }
    if (auto it = doc.find("edges"); it != doc.end()) {
        if (!it->is_array()) format_error("'edges' must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& je = (*it)[i];
            std::string where = "edges[" + std::to_string(i) + "]";
            if (!je.is_object()) format_error(where + " must be an object");
            only_fields(je, {"id", "label", "from", "to"}, where);
            edges.push_back({string_field(je, "id", where), string_field(je, "label", where),
                             string_field(je, "from", where), string_field(je, "to", where)});
        }
    }
    return PropertyGraph(std::move(vertices), std::move(edges));
}

std::string dump_graph(const PropertyGraph& graph) {
    nlohmann::ordered_json doc;
    doc["vertices"] = nlohmann::ordered_json::array();
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& v : graph.vertices()) {
        nlohmann::ordered_json props = nlohmann::ordered_json::object();
        for (const auto& [key, lit] : v.properties) {
            switch (lit.kind()) {
                case LiteralKind::String: props[key] = lit.as_string(); break;
                case LiteralKind::Integer: props[key] = lit.as_integer(); break;
                case LiteralKind::Double: props[key] = lit.as_double(); break;
                case LiteralKind::Boolean: props[key] = lit.as_boolean(); break;
            }
        }
        doc["vertices"].push_back({{"id", v.id}, {"label", v.label}, {"properties", std::move(props)}});
    }
    for (const auto& e : graph.edges()) {
        doc["edges"].push_back({{"id", e.id}, {"label", e.label}, {"from", e.from}, {"to", e.to}});
    }
    return doc.dump();
}

// -- evaluation ----------------------------------------------------------------

namespace {

struct Traverser {
    std::vector<std::pair<std::string, Value>> bindings;
    std::optional<Value> current;

    const Value* find(const std::string& var) const {
        for (const auto& [k, v] : bindings) {
            if (k == var) return &v;
        }
        return nullptr;
    }
    Value get(const std::string& var) const {
        const Value* v = find(var);
        return v ? *v : Value{Unbound{}};
    }
};

using Stream = std::vector<Traverser>;

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorCode::MalformedTraversal, msg); }

class Evaluator {
public:
    explicit Evaluator(const PropertyGraph& graph) : graph_(graph) {}

    SolutionTable run_top(const g::Traversal& t) {
        Stream stream{Traverser{}};
        std::optional<SolutionTable> table;
        for (const auto& step : t.steps) {
            if (table) {
                apply_table_step(step, *table);
            } else if (!apply_projection(step, stream, table)) {
                stream = apply(step, std::move(stream));
            }
        }
        if (!table) malformed("traversal ends without select(), count() or groupCount()");
        return std::move(*table);
    }

private:
    Stream run(const g::Traversal& t, Traverser start) {
        Stream stream{std::move(start)};
        for (const auto& step : t.steps) {
            stream = apply(step, std::move(stream));
            if (stream.empty()) break;
        }
        return stream;
    }

    std::size_t vertex_of(const Traverser& t, const char* step) const {
        const VertexRef* ref = t.current ? std::get_if<VertexRef>(&*t.current) : nullptr;
        if (ref == nullptr) malformed(std::string(step) + "() needs a vertex as the current element");
        return *graph_.vertex_index(ref->id);
    }

    bool bind(Traverser& t, const std::string& var) const {
        if (!t.current) malformed("as('" + var + "') without a current element");
        if (const Value* bound = t.find(var)) return same_term(*bound, *t.current);
        t.bindings.emplace_back(var, *t.current);
        return true;
    }

    static bool test(const g::WherePredicate& pred, const Value& lhs, const Traverser& t) {
        return std::visit(
            [&](const auto& p) -> bool {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, g::Comparison>) {
                    return compare(p.op, lhs, to_value(p.value));
                } else if constexpr (std::is_same_v<P, g::VarComparison>) {
                    return compare(p.op, lhs, t.get(p.var));
                } else {
                    return std::any_of(p.alternatives.begin(), p.alternatives.end(),
                                       [&](const g::Comparison& c) { return compare(c.op, lhs, to_value(c.value)); });
                }
            },
            pred);
    }

    void match(const g::step::Match& m, std::size_t i, Traverser t, Stream& out) {
        if (i == m.patterns.size()) {
            out.push_back(std::move(t));
            return;
        }
        const g::Traversal& pattern = m.patterns[i];
        const auto* start = pattern.steps.empty() ? nullptr : std::get_if<g::step::As>(&pattern.steps.front());
        if (start == nullptr) malformed("match() patterns must start with as()");
        g::Traversal rest{{pattern.steps.begin() + 1, pattern.steps.end()}};

        std::vector<Traverser> starts;
        if (i == 0) {
            Traverser s = t;
            if (bind(s, start->name)) starts.push_back(std::move(s));
        } else if (const Value* bound = t.find(start->name)) {
            Traverser s = t;
            s.current = *bound;
            starts.push_back(std::move(s));
        } else {
            for (const auto& v : graph_.vertices()) {
                Traverser s = t;
                s.current = VertexRef{v.id};
                s.bindings.emplace_back(start->name, *s.current);
                starts.push_back(std::move(s));
            }
        }
        for (auto& s : starts) {
            for (auto& r : run(rest, std::move(s))) {
                r.current = t.current;
                match(m, i + 1, std::move(r), out);
            }
        }
    }

    Stream apply(const g::Step& step, Stream in) {
        Stream out;
        if (const auto* u = std::get_if<g::step::Union>(&step)) {
            for (const auto& branch : u->branches) {
                for (const auto& t : in) {
                    for (auto& r : run(branch, t)) out.push_back(std::move(r));
                }
            }
            return out;
        }
        for (auto& t : in) apply_one(step, std::move(t), out);
        return out;
    }

    void apply_one(const g::Step& step, Traverser t, Stream& out) {
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, g::step::V>) {
                    for (const auto& v : graph_.vertices()) {
                        Traverser n = t;
                        n.current = VertexRef{v.id};
                        out.push_back(std::move(n));
                    }
                } else if constexpr (std::is_same_v<S, g::step::Match>) {
                    match(s, 0, std::move(t), out);
                } else if constexpr (std::is_same_v<S, g::step::Coalesce>) {
                    for (const auto& branch : s.branches) {
                        Stream r = run(branch, t);
                        if (!r.empty()) {
                            for (auto& x : r) out.push_back(std::move(x));
                            return;
                        }
                    }
                } else if constexpr (std::is_same_v<S, g::step::As>) {
                    if (bind(t, s.name)) out.push_back(std::move(t));
                } else if constexpr (std::is_same_v<S, g::step::Out>) {
                    std::size_t vi = vertex_of(t, "out");
                    for (std::size_t ei : graph_.out_edges(vi)) {
                        const Edge& e = graph_.edges()[ei];
                        if (e.label != s.label) continue;
                        Traverser n = t;
                        n.current = VertexRef{e.to};
                        out.push_back(std::move(n));
                    }
                } else if constexpr (std::is_same_v<S, g::step::Values>) {
                    const Vertex& v = graph_.vertices()[vertex_of(t, "values")];
                    if (auto it = v.properties.find(s.key); it != v.properties.end()) {
                        t.current = to_value(it->second);
                        out.push_back(std::move(t));
                    }
                } else if constexpr (std::is_same_v<S, g::step::Label>) {
                    t.current = Literal::string(graph_.vertices()[vertex_of(t, "label")].label);
                    out.push_back(std::move(t));
                } else if constexpr (std::is_same_v<S, g::step::Has>) {
                    const Vertex& v = graph_.vertices()[vertex_of(t, "has")];
                    auto it = v.properties.find(s.key);
                    if (it != v.properties.end() && compare(s.pred.op, to_value(it->second), to_value(s.pred.value))) {
                        out.push_back(std::move(t));
                    }
                } else if constexpr (std::is_same_v<S, g::step::HasLabel>) {
                    if (graph_.vertices()[vertex_of(t, "hasLabel")].label == s.value) out.push_back(std::move(t));
                } else if constexpr (std::is_same_v<S, g::step::HasId>) {
                    if (graph_.vertices()[vertex_of(t, "hasId")].id == s.id) out.push_back(std::move(t));
                } else if constexpr (std::is_same_v<S, g::step::Where>) {
                    if (test(s.pred, t.get(s.var), t)) out.push_back(std::move(t));
                } else if constexpr (std::is_same_v<S, g::step::Constant>) {
                    t.current = std::holds_alternative<Unbound>(s.value) ? Value{Unbound{}}
                                                                         : to_value(std::get<Literal>(s.value));
                    out.push_back(std::move(t));
                } else if constexpr (std::is_same_v<S, g::step::Union>) {
                    // handled stream-wide in apply()
                } else {
                    malformed("this step cannot appear before select(), count() or groupCount()");
                }
            },
            step);
    }

    // Select, Count and GroupCount end the traverser stream.
    bool apply_projection(const g::Step& step, const Stream& stream, std::optional<SolutionTable>& table) {
        if (const auto* s = std::get_if<g::step::Select>(&step)) {
            SolutionTable t{s->vars, {}, false};
            for (const auto& tr : stream) {
                Row row;
                for (const auto& v : s->vars) row.push_back(tr.get(v));
                t.rows.push_back(std::move(row));
            }
            table = std::move(t);
            return true;
        }
        if (const auto* c = std::get_if<g::step::Count>(&step)) {
            auto n = std::count_if(stream.begin(), stream.end(), [&](const Traverser& tr) {
                return !std::holds_alternative<Unbound>(tr.get(c->counted));
            });
            table = SolutionTable{{c->alias}, {Row{Literal::integer(n)}}, false};
            return true;
        }
        if (const auto* gc = std::get_if<g::step::GroupCount>(&step)) {
            SolutionTable t{gc->keys, {}, false};
            t.columns.push_back(gc->alias);
            std::unordered_map<std::string, std::size_t> group_of;
            std::vector<std::int64_t> counts;
            for (const auto& tr : stream) {
                Row key;
                std::string k;
                for (const auto& v : gc->keys) {
                    key.push_back(tr.get(v));
                    k += canonical_key(key.back());
                    k += '\x1f';
                }
                auto [it, inserted] = group_of.emplace(k, t.rows.size());
                if (inserted) {
                    t.rows.push_back(std::move(key));
                    counts.push_back(0);
                }
                if (!std::holds_alternative<Unbound>(tr.get(gc->counted))) ++counts[it->second];
            }
            for (std::size_t i = 0; i < t.rows.size(); ++i) t.rows[i].push_back(Literal::integer(counts[i]));
            table = std::move(t);
            return true;
        }
        return false;
    }

    static std::size_t column(const SolutionTable& t, const std::string& var) {
        auto it = std::find(t.columns.begin(), t.columns.end(), var);
        if (it == t.columns.end()) malformed("order().by('" + var + "') names a column that is not selected");
        return static_cast<std::size_t>(it - t.columns.begin());
    }

    void apply_table_step(const g::Step& step, SolutionTable& t) {
        if (std::holds_alternative<g::step::Dedup>(step)) {
            std::set<std::string> seen;
            std::vector<Row> kept;
            for (auto& row : t.rows) {
                std::string k;
                for (const auto& v : row) {
                    k += canonical_key(v);
                    k += '\x1f';
                }
                if (seen.insert(k).second) kept.push_back(std::move(row));
            }
            t.rows = std::move(kept);
        } else if (const auto* o = std::get_if<g::step::Order>(&step)) {
            std::vector<std::pair<std::size_t, bool>> keys;
            for (const auto& k : o->keys) keys.emplace_back(column(t, k.var), k.direction == g::step::Direction::Desc);
            std::stable_sort(t.rows.begin(), t.rows.end(), [&](const Row& a, const Row& b) {
                for (auto [col, desc] : keys) {
                    int c = order_compare(a[col], b[col]);
                    if (c != 0) return desc ? c > 0 : c < 0;
                }
                return false;
            });
            t.ordered = true;
        } else if (const auto* r = std::get_if<g::step::Range>(&step)) {
            auto size = static_cast<std::int64_t>(t.rows.size());
            std::int64_t lo = std::min(r->lo, size);
            std::int64_t hi = r->hi ? std::min(*r->hi, size) : size;
            hi = std::max(hi, lo);
            t.rows = std::vector<Row>(t.rows.begin() + lo, t.rows.begin() + hi);
        } else {
            malformed("only dedup(), order() and range() may follow the projection step");
        }
    }

    const PropertyGraph& graph_;
};

}  // namespace

SolutionTable eval(const g::Traversal& traversal, const PropertyGraph& graph) {
    if (auto problem = g::check_well_formed(traversal)) malformed(*problem);
    return Evaluator(graph).run_top(traversal);
}

}  // namespace s2g::engine
