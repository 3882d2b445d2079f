#pragma once

// Direct enumeration over PropertyGraph members, used as the reference for
// single-pattern matches. Deliberately independent of the RDF view, the
// translator and the engine.

#include <string>
#include <vector>

#include "s2g/fuzz.hpp"
#include "s2g/gremlin/traversal.hpp"
#include "s2g/model.hpp"
#include "s2g/solution.hpp"

namespace s2g::testing {

inline std::vector<std::string> vars_of(const std::vector<Triple>& patterns) {
    std::vector<std::string> out;
    for (const auto& t : patterns) {
        for (const Term* term : {&t.s, &t.o}) {
            if (const auto* v = std::get_if<Var>(term)) {
                if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
            }
        }
    }
    return out;
}

/// Rows of (subject, object) candidates for one pattern, filtered by its
/// constants and projected onto its variables.
inline SolutionTable naive_single_pattern(const PropertyGraph& g, const Triple& t) {
    const std::string& p = std::get<Iri>(t.p).str();
    std::vector<std::pair<Value, Value>> pairs;
    if (p.starts_with(kEdgeNs)) {
        std::string label = p.substr(kEdgeNs.size());
        for (const auto& e : g.edges()) {
            if (e.label == label) pairs.emplace_back(VertexRef{e.from}, VertexRef{e.to});
        }
    } else {
        std::string key = p.substr(kVertexPropertyNs.size());
        for (const auto& v : g.vertices()) {
            if (key == kLabelKey) {
                pairs.emplace_back(VertexRef{v.id}, to_value(Literal::string(v.label)));
            } else if (auto it = v.properties.find(key); it != v.properties.end()) {
                pairs.emplace_back(VertexRef{v.id}, to_value(it->second));
            }
        }
    }
    auto constant = [](const Term& term) -> std::optional<Value> {
        if (const auto* i = std::get_if<Iri>(&term)) return Value(*i);
        if (const auto* l = std::get_if<Literal>(&term)) return to_value(*l);
        return std::nullopt;
    };
    SolutionTable out;
    out.columns = vars_of({t});
    const auto* sv = std::get_if<Var>(&t.s);
    const auto* ov = std::get_if<Var>(&t.o);
    for (const auto& [s, o] : pairs) {
        if (auto c = constant(t.s); c && !same_term(*c, s)) continue;
        if (auto c = constant(t.o); c && !same_term(*c, o)) continue;
        if (sv && ov && sv->name == ov->name && !same_term(s, o)) continue;
        Row row;
        if (sv) row.push_back(s);
        if (ov && !(sv && sv->name == ov->name)) row.push_back(o);
        out.rows.push_back(std::move(row));
    }
    return out;
}

/// V · Match(patterns) · Select(vars).
inline gremlin::Traversal match_traversal(std::vector<gremlin::Traversal> patterns, std::vector<std::string> vars) {
    using namespace gremlin;
    return Traversal{{step::V{}, step::Match{std::move(patterns)}, step::Select{std::move(vars)}}};
}

/// A random pattern over `g` whose constants are usually drawn from it.
/// Vertex variables come from ?a ?b ?c, literal variables from ?x ?y.
inline Triple random_pattern(fuzz::Rng& rng, const PropertyGraph& g) {
    static const std::vector<std::string> vertex_vars{"a", "b", "c"};
    static const std::vector<std::string> literal_vars{"x", "y"};
    static const std::vector<std::string> keys{"name", "age", "score", "val", "flag"};
    static const std::vector<std::string> edge_labels{"knows", "likes", "owns"};
    auto vertex_term = [&]() -> Term {
        if (!g.vertices().empty() && rng.percent(20)) return vertex_iri(rng.pick(g.vertices()).id);
        return Var{rng.pick(vertex_vars)};
    };
    Term s = vertex_term();
    switch (rng.below(4)) {
        case 0: {
            Term o = Var{rng.pick(vertex_vars)};
            if (!g.vertices().empty() && rng.percent(25)) o = vertex_iri(rng.pick(g.vertices()).id);
            return {s, Iri(std::string(kEdgeNs) + rng.pick(edge_labels)), o};
        }
        case 1: {
            Term o = Var{rng.pick(literal_vars)};
            if (!g.vertices().empty() && rng.percent(30)) o = Literal::string(rng.pick(g.vertices()).label);
            return {s, Iri(std::string(kVertexPropertyNs) + "label"), o};
        }
        default: {
            const std::string& key = rng.pick(keys);
            Term o = Var{rng.pick(literal_vars)};
            if (!g.vertices().empty() && rng.percent(35)) {
                const auto& props = rng.pick(g.vertices()).properties;
                if (auto it = props.find(key); it != props.end()) o = it->second;
            }
            return {s, Iri(std::string(kVertexPropertyNs) + key), o};
        }
    }
}

}  // namespace s2g::testing
