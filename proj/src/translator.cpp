#include "s2g/translator.hpp"

#include <functional>
#include <limits>
#include <map>

#include "s2g/error.hpp"

namespace s2g::translator {

namespace g = gremlin;
using sparql::FilterExpr;

namespace {

[[noreturn]] void ill_typed(const std::string& msg) { throw Error(ErrorCode::IllTypedPattern, msg); }

bool starts_with(const std::string& s, std::string_view prefix) {
    return s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

std::string term_text(const Term& t) {
    if (const auto* v = std::get_if<Var>(&t)) return "?" + v->name;
    if (const auto* i = std::get_if<Iri>(&t)) return "<" + i->str() + ">";
    return lexical_form(std::get<Literal>(t));
}

std::string vertex_id_or_throw(const Iri& iri, const char* role) {
    auto id = vertex_id_of(iri);
    if (!id) ill_typed(std::string(role) + " <" + iri.str() + "> is not a vertex IRI");
    return *id;
}

const Iri& predicate_iri(const Triple& t) {
    const auto* p = std::get_if<Iri>(&t.p);
    if (p == nullptr) {
        throw Error(ErrorCode::UnsupportedVariablePredicate, "predicate " + term_text(t.p) + " must be an IRI");
    }
    return *p;
}

// Steps after the subject binding: T1, T3 and T5 bodies, or the constant-object
// forms T2, T4 and T6.
void append_body(std::vector<g::Step>& out, const Triple& t) {
    auto kind = classify_predicate(predicate_iri(t));
    const Term& o = t.o;
    if (const auto* prop = std::get_if<VertexProp>(&kind)) {
        if (const auto* v = std::get_if<Var>(&o)) {
            out.push_back(g::step::Values{prop->key});
            out.push_back(g::step::As{v->name});
        } else if (const auto* lit = std::get_if<Literal>(&o)) {
            out.push_back(g::step::Has{prop->key, {CmpOp::Eq, *lit}});
        } else {
            ill_typed("property predicate v:" + prop->key + " cannot have the IRI object " + term_text(o));
        }
    } else if (std::holds_alternative<VertexLabel>(kind)) {
        if (const auto* v = std::get_if<Var>(&o)) {
            out.push_back(g::step::Label{});
            out.push_back(g::step::As{v->name});
        } else if (const auto* lit = std::get_if<Literal>(&o); lit && lit->kind() == LiteralKind::String) {
            out.push_back(g::step::HasLabel{lit->as_string()});
        } else {
            ill_typed("v:label needs a variable or string object, got " + term_text(o));
        }
    } else {
        const auto& edge = std::get<EdgeLabel>(kind);
        out.push_back(g::step::Out{edge.label});
        if (const auto* v = std::get_if<Var>(&o)) {
            out.push_back(g::step::As{v->name});
        } else if (const auto* iri = std::get_if<Iri>(&o)) {
            out.push_back(g::step::HasId{vertex_id_or_throw(*iri, "edge object")});
        } else {
            ill_typed("edge predicate e:" + edge.label + " cannot have the literal object " + term_text(o));
        }
    }
}

// A variable that is a vertex in one place and a literal in another can
// never join, and the two evaluators would disagree on why.
void check_var_kinds(const sparql::GroupPattern& where) {
    enum class Kind { Vertex, Literal };
    std::map<std::string, Kind> kinds;
    auto note = [&](const Term& t, Kind k) {
        const auto* v = std::get_if<Var>(&t);
        if (v == nullptr) return;
        auto [it, inserted] = kinds.emplace(v->name, k);
        if (!inserted && it->second != k) {
            ill_typed("?" + v->name + " is used both as a vertex and as a literal value");
        }
    };
    std::function<void(const sparql::GroupPattern&)> walk = [&](const sparql::GroupPattern& g) {
        for (const auto& e : g.elements) {
            auto visit_triple = [&](const Triple& t) {
                note(t.s, Kind::Vertex);
                auto kind = classify_predicate(predicate_iri(t));
                note(t.o, std::holds_alternative<EdgeLabel>(kind) ? Kind::Vertex : Kind::Literal);
            };
            if (const auto* t = std::get_if<Triple>(&e)) visit_triple(*t);
            if (const auto* o = std::get_if<sparql::OptionalPattern>(&e)) {
                for (const auto& t : o->triples) visit_triple(t);
            }
            if (const auto* u = std::get_if<sparql::UnionPattern>(&e)) {
                for (const auto& b : u->branches) walk(b);
            }
        }
    };
    walk(where);
}

void collect_or(const FilterExpr& e, std::vector<const sparql::Comparison*>& out) {
    if (e.kind == FilterExpr::Kind::Or) {
        for (const auto& op : e.operands) collect_or(op, out);
    } else if (e.kind == FilterExpr::Kind::Cmp) {
        out.push_back(&*e.comparison);
    } else {
        throw Error(ErrorCode::UnsupportedDisjunction, "a disjunction may only combine comparisons");
    }
}

void flatten_and(const FilterExpr& e, std::vector<g::step::Where>& out) {
    switch (e.kind) {
        case FilterExpr::Kind::And:
            for (const auto& op : e.operands) flatten_and(op, out);
            return;
        case FilterExpr::Kind::Cmp: {
            const auto& c = *e.comparison;
            if (const auto* lit = std::get_if<Literal>(&c.rhs)) {
                out.push_back({c.lhs.name, g::Comparison{c.op, *lit}});
            } else {
                out.push_back({c.lhs.name, g::VarComparison{c.op, std::get<Var>(c.rhs).name}});
            }
            return;
        }
        case FilterExpr::Kind::Or: {
            std::vector<const sparql::Comparison*> alts;
            collect_or(e, alts);
            g::AnyOf any;
            for (const auto* c : alts) {
                const auto* lit = std::get_if<Literal>(&c->rhs);
                if (lit == nullptr) {
                    throw Error(ErrorCode::UnsupportedDisjunction,
                                "a disjunction cannot compare two variables (?" + c->lhs.name + ")");
                }
                if (c->lhs.name != alts.front()->lhs.name) {
                    throw Error(ErrorCode::UnsupportedDisjunction, "a disjunction must test a single variable, found ?" +
                                                                       alts.front()->lhs.name + " and ?" + c->lhs.name);
                }
                any.alternatives.push_back({c->op, *lit});
            }
            out.push_back({alts.front()->lhs.name, std::move(any)});
            return;
        }
        case FilterExpr::Kind::Regex:
            throw Error(ErrorCode::UnsupportedRegex, "REGEX is not supported in FILTER");
    }
}

g::Traversal optional_sst(const Triple& t) {
    const auto& s = std::get<Var>(t.s);
    const auto& o = std::get<Var>(t.o);
    g::Traversal inner;
    append_body(inner.steps, t);
    inner.steps.pop_back();  // the trailing As(o) moves outside the coalesce
    g::Traversal fallback{{g::step::Constant{Unbound{}}}};
    return g::Traversal{{g::step::As{s.name}, g::step::Coalesce{{std::move(inner), std::move(fallback)}},
                         g::step::As{o.name}}};
}

}  // namespace

PredicateKind classify_predicate(const Iri& predicate) {
    const auto& s = predicate.str();
    if (starts_with(s, kVertexPropertyNs)) {
        std::string key = s.substr(kVertexPropertyNs.size());
        if (key == kLabelKey) return VertexLabel{};
        return VertexProp{std::move(key)};
    }
    if (starts_with(s, kEdgeNs)) return EdgeLabel{s.substr(kEdgeNs.size())};
    throw Error(ErrorCode::UnknownPredicateNamespace,
                "predicate <" + s + "> is in neither the v: (" + std::string(kVertexPropertyNs) + ") nor the e: (" +
                    std::string(kEdgeNs) + ") namespace");
}

g::Traversal translate_bgp(const Triple& triple, FreshVars& fresh) {
    g::Traversal out;
    if (const auto* v = std::get_if<Var>(&triple.s)) {
        out.steps.push_back(g::step::As{v->name});
    } else if (const auto* iri = std::get_if<Iri>(&triple.s)) {
        std::string id = vertex_id_or_throw(*iri, "subject");
        out.steps.push_back(g::step::As{fresh.next()});
        out.steps.push_back(g::step::HasId{std::move(id)});
    } else {
        ill_typed("a literal cannot be a subject");
    }
    append_body(out.steps, triple);
    return out;
}

g::Traversal translate_bgp(const Triple& triple) {
    FreshVars fresh;
    return translate_bgp(triple, fresh);
}

std::vector<g::step::Where> translate_filter(const FilterExpr& filter) {
    std::vector<g::step::Where> out;
    flatten_and(filter, out);
    return out;
}

g::Traversal translate_query(const sparql::ValidatedQuery& validated) {
    const auto& q = validated.query();
    check_var_kinds(q.where);

    auto used = sparql::pattern_vars(q.where);
    std::set<std::string> taken(used.begin(), used.end());
    if (q.projection.count) taken.insert(q.projection.count->alias);
    FreshVars fresh(std::move(taken));
    g::Traversal out;
    out.steps.push_back(g::step::V{});

    auto append_filters = [](std::vector<g::Step>& steps, const sparql::GroupPattern& group) {
        for (const auto& e : group.elements) {
            if (const auto* f = std::get_if<sparql::Filter>(&e)) {
                for (auto& w : translate_filter(f->expr)) steps.push_back(std::move(w));
            }
        }
    };

    const sparql::UnionPattern* union_pattern = nullptr;
    for (const auto& e : q.where.elements) {
        if (const auto* u = std::get_if<sparql::UnionPattern>(&e)) union_pattern = u;
    }

    if (union_pattern != nullptr) {
        g::step::Union u;
        for (const auto& branch : union_pattern->branches) {
            g::step::Match m;
            for (const auto& e : branch.elements) {
                if (const auto* t = std::get_if<Triple>(&e)) m.patterns.push_back(translate_bgp(*t, fresh));
            }
            g::Traversal b{{std::move(m)}};
            append_filters(b.steps, branch);
            u.branches.push_back(std::move(b));
        }
        out.steps.push_back(std::move(u));
    } else {
        g::step::Match m;
        std::vector<g::Traversal> optionals;
        for (const auto& e : q.where.elements) {
            if (const auto* t = std::get_if<Triple>(&e)) m.patterns.push_back(translate_bgp(*t, fresh));
            if (const auto* o = std::get_if<sparql::OptionalPattern>(&e)) {
                for (const auto& t : o->triples) optionals.push_back(optional_sst(t));
            }
        }
        for (auto& o : optionals) m.patterns.push_back(std::move(o));
        out.steps.push_back(std::move(m));
    }
    append_filters(out.steps, q.where);

    const auto& proj = q.projection;
    bool dedup = q.distinct;
    if (proj.kind == sparql::ProjectionKind::Count) {
        const auto& c = *proj.count;
        if (proj.vars.empty()) {
            out.steps.push_back(g::step::Count{c.counted, c.alias});
        } else {
            out.steps.push_back(g::step::GroupCount{proj.vars, c.counted, c.alias});
        }
    } else {
        out.steps.push_back(g::step::Select{proj.vars});
        if (!q.group_by.empty()) dedup = true;
    }
    if (dedup) out.steps.push_back(g::step::Dedup{});
    if (!q.order_by.empty()) {
        g::step::Order order;
        for (const auto& k : q.order_by) {
            order.keys.push_back(
                {k.var, k.direction == sparql::Direction::Asc ? g::step::Direction::Asc : g::step::Direction::Desc});
        }
        out.steps.push_back(std::move(order));
    }
    if (q.limit || q.offset) {
        std::int64_t lo = q.offset.value_or(0);
        std::optional<std::int64_t> hi;
        if (q.limit) {
            constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
            hi = *q.limit > kMax - lo ? kMax : lo + *q.limit;
        }
        out.steps.push_back(g::step::Range{lo, hi});
    }
    return out;
}

}  // namespace s2g::translator
