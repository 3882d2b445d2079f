#include "s2g/sparql/validate.hpp"

#include <algorithm>
#include <set>

#include "s2g/error.hpp"

namespace s2g::sparql {

namespace {

using VarSet = std::set<std::string>;

template <class F>
void for_each_triple(const GroupPattern& g, F&& f) {
    for (const auto& e : g.elements) {
        if (const auto* t = std::get_if<Triple>(&e)) {
            f(*t);
        } else if (const auto* o = std::get_if<OptionalPattern>(&e)) {
            for (const auto& t2 : o->triples) f(t2);
        } else if (const auto* u = std::get_if<UnionPattern>(&e)) {
            for (const auto& b : u->branches) for_each_triple(b, f);
        }
    }
}

template <class F>
void for_each_filter(const GroupPattern& g, F&& f) {
    for (const auto& e : g.elements) {
        if (const auto* fl = std::get_if<Filter>(&e)) {
            f(fl->expr);
        } else if (const auto* u = std::get_if<UnionPattern>(&e)) {
            for (const auto& b : u->branches) for_each_filter(b, f);
        }
    }
}

bool mentions_regex(const FilterExpr& e) {
    if (e.kind == FilterExpr::Kind::Regex) return true;
    return std::any_of(e.operands.begin(), e.operands.end(), mentions_regex);
}

std::string var_list(const VarSet& vars) {
    std::string out;
    for (const auto& v : vars) out += (out.empty() ? "?" : ", ?") + v;
    return out;
}

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

void check_optional(const GroupPattern& where, std::size_t index) {
    const auto& opt = std::get<OptionalPattern>(where.elements[index]);
    if (opt.triples.size() != 1) {
        fail(ErrorCode::InvalidOptional, "each OPTIONAL block must contain exactly one triple pattern");
    }
    const Triple& t = opt.triples.front();
    const auto* s = std::get_if<Var>(&t.s);
    const auto* o = std::get_if<Var>(&t.o);
    if (s == nullptr) fail(ErrorCode::InvalidOptional, "the subject of an OPTIONAL triple must be a variable");
    if (o == nullptr) fail(ErrorCode::InvalidOptional, "the object of an OPTIONAL triple must be a variable");
    if (s->name == o->name) fail(ErrorCode::InvalidOptional, "an OPTIONAL triple must not reuse ?" + s->name);

    bool subject_bound = false;
    for (std::size_t i = 0; i < index; ++i) {
        if (const auto* req = std::get_if<Triple>(&where.elements[i])) {
            auto vars = triple_vars(*req);
            if (std::find(vars.begin(), vars.end(), s->name) != vars.end()) subject_bound = true;
        }
    }
    if (!subject_bound) {
        fail(ErrorCode::InvalidOptional,
             "OPTIONAL subject ?" + s->name + " must be bound by a preceding required triple pattern");
    }

    int uses = 0;
    for_each_triple(where, [&](const Triple& other) {
        auto vars = triple_vars(other);
        if (std::find(vars.begin(), vars.end(), o->name) != vars.end()) ++uses;
    });
    if (uses != 1) {
        fail(ErrorCode::InvalidOptional,
             "OPTIONAL object ?" + o->name + " must not occur in any other triple pattern");
    }
}

}  // namespace

ValidatedQuery validate(const SelectQuery& q) {
    // V1
    for_each_triple(q.where, [](const Triple& t) {
        if (const auto* p = std::get_if<Var>(&t.p)) {
            fail(ErrorCode::UnsupportedVariablePredicate,
                 "variable ?" + p->name + " in predicate position; the predicate of every triple pattern must be known");
        }
    });
    // V2
    for_each_filter(q.where, [](const FilterExpr& e) {
        if (mentions_regex(e)) fail(ErrorCode::UnsupportedRegex, "REGEX in FILTER is not supported");
    });

    std::size_t unions = 0;
    std::size_t non_filters = 0;
    for (const auto& e : q.where.elements) {
        if (std::holds_alternative<UnionPattern>(e)) ++unions;
        if (!std::holds_alternative<Filter>(e)) ++non_filters;
    }
    if (unions > 0 && non_filters > 1) {
        fail(ErrorCode::UnsupportedUnionMix,
             "a UNION can only be combined with FILTERs; move other patterns into both branches");
    }

    const auto& proj = q.projection;
    VarSet projected;
    for (const auto& v : proj.vars) {
        if (!projected.insert(v).second) fail(ErrorCode::DuplicateProjection, "?" + v + " is projected twice");
    }
    auto in_pattern = pattern_vars(q.where);
    VarSet pattern(in_pattern.begin(), in_pattern.end());
    if (proj.count) {
        if (projected.contains(proj.count->alias)) {
            fail(ErrorCode::DuplicateProjection, "COUNT alias ?" + proj.count->alias + " is also projected");
        }
        if (pattern.contains(proj.count->alias)) {
            fail(ErrorCode::DuplicateProjection, "COUNT alias ?" + proj.count->alias + " is already used in the pattern");
        }
    }

    // V5
    VarSet must_bind = projected;
    must_bind.insert(q.group_by.begin(), q.group_by.end());
    if (proj.count) must_bind.insert(proj.count->counted);
    for (const auto& v : must_bind) {
        if (!pattern.contains(v)) {
            fail(ErrorCode::ProjectedVarNotInPattern, "?" + v + " does not occur in any triple pattern");
        }
    }

    // V4
    VarSet keys(q.group_by.begin(), q.group_by.end());
    if (keys.size() != q.group_by.size()) fail(ErrorCode::InvalidGroupBy, "duplicate GROUP BY variable");
    if (!q.group_by.empty() && keys != projected) {
        fail(ErrorCode::InvalidGroupBy,
             "GROUP BY keys {" + var_list(keys) + "} must equal the projected variables {" + var_list(projected) + "}");
    }
    if (proj.count && q.group_by.empty() && !projected.empty()) {
        fail(ErrorCode::InvalidGroupBy, "projecting " + var_list(projected) + " next to COUNT requires GROUP BY");
    }

    // V3
    VarSet outputs = projected;
    if (proj.count) outputs.insert(proj.count->alias);
    for (const auto& k : q.order_by) {
        if (!outputs.contains(k.var)) {
            fail(ErrorCode::OrderByNotProjected, "ORDER BY ?" + k.var + " is not a projected variable");
        }
    }

    for (std::size_t i = 0; i < q.where.elements.size(); ++i) {
        const auto& e = q.where.elements[i];
        if (const auto* u = std::get_if<UnionPattern>(&e)) {
            // V6
            for (const auto& branch : u->branches) {
                auto bv = pattern_vars(branch);
                VarSet bound(bv.begin(), bv.end());
                for (const auto& v : projected) {
                    if (!bound.contains(v)) {
                        fail(ErrorCode::UnionBranchMissingVar, "a UNION branch does not bind projected ?" + v);
                    }
                }
            }
        } else if (std::holds_alternative<OptionalPattern>(e)) {
            // V7
            check_optional(q.where, i);
        }
    }

    return ValidatedQuery(q);
}

}  // namespace s2g::sparql
