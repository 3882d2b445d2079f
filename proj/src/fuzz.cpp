#include "s2g/fuzz.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "s2g/engine.hpp"
#include "s2g/error.hpp"
#include "s2g/pipeline.hpp"

namespace s2g::fuzz {

namespace g = gremlin;

std::uint64_t Rng::below(std::uint64_t n) {
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine_());
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span + 1));
}

std::uint64_t iteration_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// -- graphs --------------------------------------------------------------------

namespace {

const std::vector<std::string> kLabels{"person", "item", "place"};
const std::vector<std::string> kEdgeLabels{"knows", "likes", "owns"};
const std::vector<std::string> kKeys{"name", "age", "score", "val", "flag"};
const std::vector<std::string> kNames{"ann", "bob", "cy", "dee", "Eve", "a b", "q\"t", "person"};

Literal random_double(Rng& rng) {
    // Whole numbers collide numerically with integer ages on purpose.
    if (rng.percent(40)) return Literal::real(static_cast<double>(rng.between(0, 60)));
    return Literal::real(static_cast<double>(rng.between(-20, 120)) / 4.0);
}

Literal random_value(Rng& rng, const std::string& key) {
    if (key == "name") return Literal::string(rng.pick(kNames));
    if (key == "age") return Literal::integer(rng.between(0, 60));
    if (key == "score") return random_double(rng);
    if (key == "flag") return Literal::boolean(rng.percent(50));
    switch (rng.below(4)) {
        case 0: return Literal::string(rng.pick(kNames));
        case 1: return Literal::integer(rng.between(-3, 5));
        case 2: return random_double(rng);
        default: return Literal::boolean(rng.percent(50));
    }
}

}  // namespace

PropertyGraph random_graph(Rng& rng, std::size_t max_vertices) {
    std::size_t max = std::max<std::size_t>(max_vertices, 1);
    // Mostly the upper half of the range; tiny graphs make empty results.
    std::size_t n = rng.percent(70) ? max - rng.below((max + 1) / 2) : 1 + rng.below(max);
    std::vector<Vertex> vertices;
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v{std::to_string(i + 1), rng.pick(kLabels), {}};
        const unsigned presence[] = {90, 85, 70, 60, 50};
        for (std::size_t k = 0; k < kKeys.size(); ++k) {
            if (rng.percent(presence[k])) v.properties.emplace(kKeys[k], random_value(rng, kKeys[k]));
        }
        vertices.push_back(std::move(v));
    }
    std::vector<Edge> edges;
    std::size_t m = rng.below(2 * n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        edges.push_back({"e" + std::to_string(i + 1), rng.pick(kEdgeLabels), std::to_string(1 + rng.below(n)),
                         std::to_string(1 + rng.below(n))});
    }
    return PropertyGraph(std::move(vertices), std::move(edges));
}

// -- queries -------------------------------------------------------------------

const std::vector<FeatureClass>& all_classes() {
    static const std::vector<FeatureClass> classes{FeatureClass::C, FeatureClass::F,  FeatureClass::L,
                                                   FeatureClass::G, FeatureClass::Gc, FeatureClass::O,
                                                   FeatureClass::U, FeatureClass::Op, FeatureClass::M,
                                                   FeatureClass::S};
    return classes;
}

std::string class_name(FeatureClass c) {
    static const char* names[] = {"C", "F", "L", "G", "Gc", "O", "U", "Op", "M", "S"};
    return names[static_cast<int>(c)];
}

namespace {

std::string sparql_literal(const Literal& lit) {
    if (lit.kind() != LiteralKind::String) return lexical_form(lit);
    std::string out = "\"";
    for (char c : lit.as_string()) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

// Vertex variables are ?a<n> and literal variables ?x<n>, so two builders
// that share counters agree on every name's kind.
class PatternBuilder {
public:
    PatternBuilder(Rng& rng, const PropertyGraph& graph, bool vertex_prefix)
        : rng_(rng), graph_(graph), vertex_prefix_(vertex_prefix) {}

    std::vector<std::string> lines;
    std::vector<std::string> vertex_vars;
    std::vector<std::string> literal_vars;
    std::map<std::string, std::string> literal_key;  // literal var → key it reads, "" for label

    std::string new_vertex() {
        std::string v = "?a" + std::to_string(next_vertex_++);
        vertex_vars.push_back(v);
        return v;
    }
    std::string new_literal(const std::string& key) {
        std::string v = "?x" + std::to_string(next_literal_++);
        literal_vars.push_back(v);
        literal_key[v] = key;
        return v;
    }
    std::vector<std::string> vars() const {
        std::vector<std::string> out = vertex_vars;
        out.insert(out.end(), literal_vars.begin(), literal_vars.end());
        return out;
    }

    std::string vertex_constant() {
        const auto& vs = graph_.vertices();
        std::string id = vs.empty() ? "1" : vs[rng_.below(vs.size())].id;
        return vertex_prefix_ ? "vx:" + id : "<urn:pg:v:" + id + ">";
    }

    Literal value_for(const std::string& key) {
        if (key.empty()) return Literal::string(rng_.percent(85) ? rng_.pick(kLabels) : "thing");
        // Usually a value that occurs in the graph.
        if (rng_.percent(75)) {
            std::vector<Literal> seen;
            for (const auto& v : graph_.vertices()) {
                if (auto it = v.properties.find(key); it != v.properties.end()) seen.push_back(it->second);
            }
            if (!seen.empty()) return rng_.pick(seen);
        }
        return random_value(rng_, key);
    }

    std::string key() { return rng_.percent(5) ? "missing" : rng_.pick(kKeys); }

    /// One triple with subject `s`; new variables are registered.
    void add(std::string s, bool allow_edges = true) {
        unsigned r = static_cast<unsigned>(rng_.below(100));
        if (!allow_edges && r >= 60) r = static_cast<unsigned>(rng_.below(60));
        if (r < 33) {
            std::string k = key();
            emit(s, "v:" + k, new_literal(k));
        } else if (r < 38 && !literal_vars.empty()) {
            // Joins two property values.
            std::string o = rng_.pick(literal_vars);
            std::string k = literal_key[o].empty() ? key() : literal_key[o];
            emit(s, "v:" + k, o);
        } else if (r < 48) {
            std::string k = key();
            emit(s, "v:" + k, sparql_literal(value_for(k)));
        } else if (r < 53) {
            emit(s, "v:label", new_literal(""));
        } else if (r < 60) {
            emit(s, "v:label", sparql_literal(value_for("")));
        } else if (r < 88) {
            emit(s, "e:" + rng_.pick(kEdgeLabels), new_vertex());
        } else if (r < 95) {
            emit(s, "e:" + rng_.pick(kEdgeLabels), rng_.pick(vertex_vars));
        } else {
            emit(s, "e:" + rng_.pick(kEdgeLabels), vertex_constant());
        }
    }

    /// A connected block of `n` triples rooted at the current vertex vars.
    void connected(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && rng_.percent(6)) {
                std::string k = key();
                emit(vertex_constant(), "v:" + k, new_literal(k));
            } else {
                add(rng_.pick(vertex_vars));
            }
        }
    }

    void emit(const std::string& s, const std::string& p, const std::string& o) {
        lines.push_back(s + " " + p + " " + o + " .");
    }

    int next_vertex_ = 0;
    int next_literal_ = 0;

private:
    Rng& rng_;
    const PropertyGraph& graph_;
    bool vertex_prefix_;
};

const std::vector<std::string> kOps{"=", "!=", "<", ">", "<=", ">="};

std::string comparison(Rng& rng, PatternBuilder& b, const std::string& var) {
    std::string op = rng.pick(kOps);
    if (rng.percent(20)) {
        auto vars = b.vars();
        return var + " " + op + " " + rng.pick(vars);
    }
    auto it = b.literal_key.find(var);
    std::string key = it != b.literal_key.end() ? it->second : rng.pick(kKeys);
    return var + " " + op + " " + sparql_literal(b.value_for(key));
}

std::string filter(Rng& rng, PatternBuilder& b, const std::vector<std::string>& vars) {
    std::string var = rng.pick(vars);
    switch (rng.below(4)) {
        case 0: {
            std::string other = rng.pick(vars);
            return "FILTER(" + comparison(rng, b, var) + " && " + comparison(rng, b, other) + ")";
        }
        case 1: {
            // A disjunction must test one variable against literals.
            auto key_it = b.literal_key.find(var);
            std::string key = key_it != b.literal_key.end() ? key_it->second : "age";
            std::string text = var + " " + rng.pick(kOps) + " " + sparql_literal(b.value_for(key));
            std::size_t n = 2 + rng.below(2);
            for (std::size_t i = 1; i < n; ++i) {
                text += " || " + var + " " + rng.pick(kOps) + " " + sparql_literal(b.value_for(key));
            }
            return "FILTER(" + text + ")";
        }
        default: return "FILTER(" + comparison(rng, b, var) + ")";
    }
}

std::vector<std::string> subset(Rng& rng, std::vector<std::string> items, std::size_t max = 4) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
    std::size_t n = 1 + rng.below(std::min(items.size(), max));
    items.resize(n);
    return items;
}

std::string join_vars(const std::vector<std::string>& vars) {
    std::string out;
    for (const auto& v : vars) out += (out.empty() ? "" : " ") + v;
    return out;
}

std::string order_clause(Rng& rng, const std::vector<std::string>& candidates) {
    std::string out = "ORDER BY";
    for (const auto& v : subset(rng, candidates, 2)) {
        switch (rng.below(3)) {
            case 0: out += " " + v; break;
            case 1: out += " ASC(" + v + ")"; break;
            default: out += " DESC(" + v + ")"; break;
        }
    }
    return out;
}

std::string slice_clause(Rng& rng) {
    std::string out;
    bool limit = rng.percent(75);
    bool offset = !limit || rng.percent(60);
    if (limit) out += " LIMIT " + std::to_string(rng.below(6));
    if (offset) out += " OFFSET " + std::to_string(rng.below(5));
    return out.substr(1);
}

struct QueryParts {
    bool distinct = false;
    std::string projection;
    std::vector<std::string> where;
    std::vector<std::string> modifiers;
};

std::string assemble(Rng& rng, const QueryParts& q, bool vertex_prefix) {
    std::string out;
    if (vertex_prefix) out += "PREFIX vx: <urn:pg:v:>\n";
    out += rng.percent(20) ? "select " : "SELECT ";
    if (q.distinct) out += "DISTINCT ";
    out += q.projection + " WHERE {\n";
    for (const auto& line : q.where) out += "  " + line + "\n";
    out += "}";
    for (const auto& m : q.modifiers) out += "\n" + m;
    return out + "\n";
}

// Optional triples whose subjects come from the required block.
std::vector<std::string> optionals(Rng& rng, PatternBuilder& b, std::size_t n) {
    std::vector<std::string> out;
    std::vector<std::string> subjects = b.vertex_vars;
    for (std::size_t i = 0; i < n; ++i) {
        std::string s = rng.pick(subjects);
        unsigned r = static_cast<unsigned>(rng.below(100));
        std::string triple;
        if (r < 55) {
            std::string k = b.key();
            triple = s + " v:" + k + " " + b.new_literal(k);
        } else if (r < 70) {
            triple = s + " v:label " + b.new_literal("");
        } else {
            triple = s + " e:" + rng.pick(kEdgeLabels) + " " + b.new_vertex();
        }
        out.push_back("OPTIONAL { " + triple + " }");
    }
    return out;
}

}  // namespace

std::string random_query(Rng& rng, FeatureClass cls, const PropertyGraph& graph) {
    bool vertex_prefix = rng.percent(10);
    PatternBuilder b(rng, graph, vertex_prefix);
    QueryParts q;
    auto plain_projection = [&](const std::vector<std::string>& vars) {
        if (rng.percent(15)) return std::string("*");
        return join_vars(subset(rng, vars));
    };
    // Variables a `*` projection would expand to, in textual order.
    auto star_vars = [&] {
        std::vector<std::string> out;
        for (const auto& line : b.lines) {
            std::size_t pos = 0;
            while ((pos = line.find('?', pos)) != std::string::npos) {
                std::size_t end = line.find(' ', pos);
                std::string v = line.substr(pos, end - pos);
                if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
                pos = end;
            }
        }
        return out;
    };
    auto projected = [&](const std::string& projection) {
        if (projection == "*") return star_vars();
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (pos < projection.size()) {
            std::size_t end = projection.find(' ', pos);
            if (end == std::string::npos) end = projection.size();
            out.push_back(projection.substr(pos, end - pos));
            pos = end + 1;
        }
        return out;
    };

    b.new_vertex();
    switch (cls) {
        case FeatureClass::C: {
            b.connected(1 + rng.below(4));
            q.distinct = rng.percent(20);
            q.projection = plain_projection(b.vars());
            q.where = b.lines;
            break;
        }
        case FeatureClass::F: {
            b.add("?a0", false);
            b.connected(rng.below(3));
            q.projection = plain_projection(b.vars());
            q.where = b.lines;
            std::size_t n = 1 + rng.below(2);
            for (std::size_t i = 0; i < n; ++i) {
                auto& pool = b.literal_vars.empty() || rng.percent(10) ? b.vertex_vars : b.literal_vars;
                auto pos = q.where.begin() + static_cast<std::ptrdiff_t>(rng.below(q.where.size() + 1));
                q.where.insert(pos, filter(rng, b, pool));
            }
            break;
        }
        case FeatureClass::L: {
            b.connected(1 + rng.below(3));
            q.projection = plain_projection(b.vars());
            q.where = b.lines;
            if (rng.percent(40)) q.modifiers.push_back(order_clause(rng, projected(q.projection)));
            q.modifiers.push_back(slice_clause(rng));
            break;
        }
        case FeatureClass::G: {
            b.connected(1 + rng.below(3));
            auto keys = subset(rng, b.vars(), 3);
            auto grouped = keys;
            std::reverse(grouped.begin(), grouped.end());
            q.projection = join_vars(keys);
            q.distinct = rng.percent(20);
            q.where = b.lines;
            q.modifiers.push_back("GROUP BY " + join_vars(grouped));
            if (rng.percent(40)) q.modifiers.push_back(order_clause(rng, keys));
            break;
        }
        case FeatureClass::Gc: {
            b.connected(1 + rng.below(3));
            q.where = b.lines;
            auto required = b.vars();
            if (rng.percent(30)) {
                for (auto& o : optionals(rng, b, 1)) q.where.push_back(o);
            }
            std::string counted = rng.pick(b.vars());
            std::vector<std::string> keys;
            if (rng.percent(70)) keys = subset(rng, required, 2);
            q.projection = join_vars(keys) + (keys.empty() ? "" : " ") + "(COUNT(" + counted + ") AS ?cnt)";
            if (!keys.empty()) q.modifiers.push_back("GROUP BY " + join_vars(keys));
            if (rng.percent(40)) {
                auto cols = keys;
                cols.push_back("?cnt");
                q.modifiers.push_back(order_clause(rng, cols));
            }
            break;
        }
        case FeatureClass::O: {
            b.connected(1 + rng.below(3));
            q.projection = plain_projection(b.vars());
            q.distinct = rng.percent(20);
            q.where = b.lines;
            q.modifiers.push_back(order_clause(rng, projected(q.projection)));
            if (rng.percent(30)) q.modifiers.push_back(slice_clause(rng));
            break;
        }
        case FeatureClass::U: {
            PatternBuilder left = b;
            left.connected(1 + rng.below(3));
            PatternBuilder right(rng, graph, vertex_prefix);
            right.new_vertex();
            right.connected(1 + rng.below(3));
            std::vector<std::string> shared;
            for (const auto& v : left.vars()) {
                auto rv = right.vars();
                if (std::find(rv.begin(), rv.end(), v) != rv.end()) shared.push_back(v);
            }
            auto branch = [&](PatternBuilder& side) {
                std::string text = "{ ";
                for (const auto& l : side.lines) text += l + " ";
                if (rng.percent(25)) {
                    auto& pool = side.literal_vars.empty() ? side.vertex_vars : side.literal_vars;
                    text += filter(rng, side, pool) + " ";
                }
                return text + "}";
            };
            q.projection = join_vars(subset(rng, shared));
            q.where.push_back(branch(left) + " UNION " + branch(right));
            if (rng.percent(20)) q.where.push_back(filter(rng, left, projected(q.projection)));
            q.distinct = rng.percent(20);
            if (rng.percent(25)) q.modifiers.push_back(order_clause(rng, projected(q.projection)));
            break;
        }
        case FeatureClass::Op: {
            b.connected(rng.below(3));
            if (b.lines.empty()) b.add("?a0");
            q.where = b.lines;
            auto required = b.vars();
            for (auto& o : optionals(rng, b, 1 + rng.below(2))) q.where.push_back(o);
            q.projection = rng.percent(10) ? "*" : join_vars(subset(rng, b.vars(), 5));
            if (rng.percent(30)) q.where.push_back(filter(rng, b, b.vars()));
            if (rng.percent(30)) q.modifiers.push_back(order_clause(rng, projected(q.projection)));
            break;
        }
        case FeatureClass::M: {
            b.connected(1 + rng.below(3));
            q.where = b.lines;
            if (rng.percent(40)) {
                for (auto& o : optionals(rng, b, 1)) q.where.push_back(o);
            }
            q.where.push_back(filter(rng, b, b.literal_vars.empty() ? b.vertex_vars : b.literal_vars));
            q.distinct = true;
            q.projection = join_vars(subset(rng, b.vars()));
            q.modifiers.push_back(order_clause(rng, projected(q.projection)));
            q.modifiers.push_back(slice_clause(rng));
            break;
        }
        case FeatureClass::S: {
            std::size_t n = 10 + rng.below(3);
            std::size_t edges = 0;
            for (std::size_t i = 0; i < n; ++i) {
                bool edge = edges < 2 && rng.percent(15);
                if (edge) {
                    ++edges;
                    b.emit("?a0", "e:" + rng.pick(kEdgeLabels), b.new_vertex());
                } else if (rng.percent(10)) {
                    b.emit("?a0", "v:label", b.new_literal(""));
                } else {
                    std::string k = rng.percent(80) ? kKeys[rng.below(2)] : rng.pick(kKeys);
                    b.emit("?a0", "v:" + k, b.new_literal(k));
                }
            }
            q.projection = plain_projection(b.vars());
            q.where = b.lines;
            break;
        }
    }
    return assemble(rng, q, vertex_prefix);
}

// -- traversals ----------------------------------------------------------------

namespace {

std::string random_name(Rng& rng) {
    static const std::vector<std::string> names{"a", "n", "x_1", "_v0", "it's", "q\"uote", "back\\slash",
                                                "tab\there", "multi\nline", "dollar$", "caf\xC3\xA9", "p2"};
    return rng.pick(names);
}

Literal random_literal(Rng& rng) {
    switch (rng.below(4)) {
        case 0: return Literal::string(random_name(rng));
        case 1: {
            static const std::vector<std::int64_t> edge{0, -1, 1, 42, std::numeric_limits<std::int64_t>::max(),
                                                        std::numeric_limits<std::int64_t>::min()};
            return Literal::integer(rng.percent(30) ? rng.pick(edge) : rng.between(-1000, 1000));
        }
        case 2: {
            static const std::vector<double> edge{0.0, -0.5, 3.0, 1e300, 1e-7, -2.5e-12, 0.1, 123456789.125};
            return Literal::real(rng.percent(50) ? rng.pick(edge) : static_cast<double>(rng.between(-4000, 4000)) / 8);
        }
        default: return Literal::boolean(rng.percent(50));
    }
}

CmpOp random_op(Rng& rng) { return static_cast<CmpOp>(rng.below(6)); }

g::Traversal random_nested(Rng& rng, int depth);

g::Step random_step(Rng& rng, int depth) {
    auto subs = [&](std::size_t max) {
        std::vector<g::Traversal> out;
        std::size_t n = 1 + rng.below(max);
        for (std::size_t i = 0; i < n; ++i) out.push_back(random_nested(rng, depth + 1));
        return out;
    };
    unsigned kind = static_cast<unsigned>(rng.below(depth >= 2 ? 15 : 18));
    switch (kind) {
        case 0: return g::step::As{random_name(rng)};
        case 1: return g::step::Out{random_name(rng)};
        case 2: return g::step::Values{random_name(rng)};
        case 3: return g::step::Label{};
        case 4: return g::step::Has{random_name(rng), {random_op(rng), random_literal(rng)}};
        case 5: return g::step::HasLabel{random_name(rng)};
        case 6: return g::step::HasId{random_name(rng)};
        case 7: {
            g::WherePredicate pred;
            switch (rng.below(3)) {
                case 0: pred = g::Comparison{random_op(rng), random_literal(rng)}; break;
                case 1: pred = g::VarComparison{random_op(rng), random_name(rng)}; break;
                default: {
                    g::AnyOf any;
                    std::size_t n = 2 + rng.below(3);
                    for (std::size_t i = 0; i < n; ++i) any.alternatives.push_back({random_op(rng), random_literal(rng)});
                    pred = std::move(any);
                }
            }
            return g::step::Where{random_name(rng), std::move(pred)};
        }
        case 8:
            if (rng.percent(50)) return g::step::Constant{Unbound{}};
            return g::step::Constant{random_literal(rng)};
        case 9: {
            g::step::Select s;
            std::size_t n = rng.below(4);
            for (std::size_t i = 0; i < n; ++i) s.vars.push_back(random_name(rng));
            return s;
        }
        case 10: return g::step::Dedup{};
        case 11: {
            g::step::Order o;
            std::size_t n = rng.below(4);
            for (std::size_t i = 0; i < n; ++i) {
                o.keys.push_back({random_name(rng), rng.percent(50) ? g::step::Direction::Asc : g::step::Direction::Desc});
            }
            return o;
        }
        case 12: {
            std::int64_t lo = rng.between(0, 20);
            if (rng.percent(25)) return g::step::Range{lo, std::nullopt};
            return g::step::Range{lo, lo + rng.between(0, 20)};
        }
        case 13: return g::step::Count{random_name(rng), random_name(rng)};
        case 14: {
            g::step::GroupCount gc;
            std::size_t n = rng.below(3);
            for (std::size_t i = 0; i < n; ++i) gc.keys.push_back(random_name(rng));
            gc.counted = random_name(rng);
            gc.alias = random_name(rng);
            return gc;
        }
        case 15: return g::step::Match{subs(3)};
        case 16: return g::step::Union{subs(2)};
        default: return g::step::Coalesce{subs(2)};
    }
}

g::Traversal random_nested(Rng& rng, int depth) {
    g::Traversal t;
    std::size_t n = 1 + rng.below(4);
    for (std::size_t i = 0; i < n; ++i) t.steps.push_back(random_step(rng, depth));
    return t;
}

}  // namespace

g::Traversal random_traversal(Rng& rng) {
    g::Traversal t;
    t.steps.push_back(g::step::V{});
    std::size_t n = rng.below(9);
    for (std::size_t i = 0; i < n; ++i) t.steps.push_back(random_step(rng, 0));
    return t;
}

// -- the loop ------------------------------------------------------------------

FuzzSummary run_fuzz(const FuzzOptions& options, std::ostream& report) {
    FuzzSummary summary;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_class;  // cases, non-empty
    const auto& classes = all_classes();
    for (std::size_t i = 0; i < options.count; ++i) {
        FeatureClass cls = classes[i % classes.size()];
        Rng rng(iteration_seed(options.seed, i));
        PropertyGraph graph = random_graph(rng, options.max_vertices);
        std::string query = random_query(rng, cls, graph);
        ++summary.cases;
        auto reproduce = [&] {
            report << "seed " << options.seed << ", iteration " << i << ", class " << class_name(cls) << "\n"
                   << "query:\n" << query << "graph:\n" << engine::dump_graph(graph) << "\n";
        };
        try {
            Compiled compiled = compile(query);
            CheckResult r = differential_check(compiled.query, compiled.traversal, graph);
            if (!r.agree) {
                summary.mismatch = true;
                report << "MISMATCH\n";
                reproduce();
                report << r.difference << "\n";
                return summary;
            }
            ++summary.agreed;
            auto& [cases, non_empty] = per_class[class_name(cls)];
            ++cases;
            if (!r.engine.rows.empty()) {
                ++non_empty;
                ++summary.non_empty;
            }
        } catch (const Error& e) {
            summary.generator_error = true;
            report << "GENERATED QUERY REJECTED: " << e.diagnostic() << "\n";
            reproduce();
            return summary;
        }
    }
    report << "seed " << options.seed << ": " << summary.agreed << "/" << summary.cases
           << " cases agree (" << summary.non_empty << " with non-empty results)\n";
    for (FeatureClass c : classes) {
        auto it = per_class.find(class_name(c));
        if (it == per_class.end()) continue;
        report << "  " << class_name(c) << ": " << it->second.first << " cases, " << it->second.second
               << " non-empty\n";
    }
    return summary;
}

}  // namespace s2g::fuzz
