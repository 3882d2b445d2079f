#include "s2g/oracle.hpp"

#include <algorithm>
#include <map>

namespace s2g::oracle {

using sparql::FilterExpr;

namespace {

using Solution = std::map<std::string, Value>;

Value term_value(const Term& t) {
    if (const auto* i = std::get_if<Iri>(&t)) return *i;
    return to_value(std::get<Literal>(t));
}

Value lookup(const Solution& s, const std::string& var) {
    auto it = s.find(var);
    return it == s.end() ? Value{Unbound{}} : it->second;
}

// Extends `s` so that pattern term `p` matches data term `d`.
bool unify(const Term& p, const Term& d, Solution& s) {
    Value dv = term_value(d);
    if (const auto* v = std::get_if<Var>(&p)) {
        auto it = s.find(v->name);
        if (it == s.end()) {
            s.emplace(v->name, dv);
            return true;
        }
        return same_term(it->second, dv);
    }
    return same_term(term_value(p), dv);
}

std::vector<Solution> join(const std::vector<Triple>& patterns, std::span<const Triple> data) {
    std::vector<Solution> solutions{Solution{}};
    for (const auto& pattern : patterns) {
        std::vector<Solution> next;
        for (const auto& s : solutions) {
            for (const auto& d : data) {
                Solution ext = s;
                if (unify(pattern.s, d.s, ext) && unify(pattern.p, d.p, ext) && unify(pattern.o, d.o, ext)) {
                    next.push_back(std::move(ext));
                }
            }
        }
        solutions = std::move(next);
    }
    return solutions;
}

// OPTIONAL: each solution extended by every match, or kept as is if none.
std::vector<Solution> left_join(std::vector<Solution> left, const std::vector<Triple>& patterns,
                                std::span<const Triple> data) {
    std::vector<Solution> out;
    for (auto& s : left) {
        std::vector<Solution> matches{s};
        for (const auto& pattern : patterns) {
            std::vector<Solution> next;
            for (const auto& m : matches) {
                for (const auto& d : data) {
                    Solution ext = m;
                    if (unify(pattern.s, d.s, ext) && unify(pattern.p, d.p, ext) && unify(pattern.o, d.o, ext)) {
                        next.push_back(std::move(ext));
                    }
                }
            }
            matches = std::move(next);
        }
        if (matches.empty()) {
            out.push_back(std::move(s));
        } else {
            for (auto& m : matches) out.push_back(std::move(m));
        }
    }
    return out;
}

bool holds(const FilterExpr& e, const Solution& s) {
    switch (e.kind) {
        case FilterExpr::Kind::And: return holds(e.operands[0], s) && holds(e.operands[1], s);
        case FilterExpr::Kind::Or: return holds(e.operands[0], s) || holds(e.operands[1], s);
        case FilterExpr::Kind::Cmp: {
            const auto& c = *e.comparison;
            Value rhs = std::holds_alternative<Var>(c.rhs) ? lookup(s, std::get<Var>(c.rhs).name)
                                                           : to_value(std::get<Literal>(c.rhs));
            return compare(c.op, lookup(s, c.lhs.name), rhs);
        }
        case FilterExpr::Kind::Regex: return false;
    }
    return false;
}

std::vector<Solution> apply_filters(std::vector<Solution> in, const sparql::GroupPattern& g) {
    for (const auto& e : g.elements) {
        if (const auto* f = std::get_if<sparql::Filter>(&e)) {
            std::vector<Solution> kept;
            for (auto& s : in) {
                if (holds(f->expr, s)) kept.push_back(std::move(s));
            }
            in = std::move(kept);
        }
    }
    return in;
}

std::vector<Triple> triples_of(const sparql::GroupPattern& g) {
    std::vector<Triple> out;
    for (const auto& e : g.elements) {
        if (const auto* t = std::get_if<Triple>(&e)) out.push_back(*t);
    }
    return out;
}

std::string row_key(const Row& row) {
    std::string k;
    for (const auto& v : row) {
        k += canonical_key(v);
        k += '\x1f';
    }
    return k;
}

std::vector<Row> distinct(std::vector<Row> rows) {
    std::vector<Row> out;
    std::vector<std::string> seen;
    for (auto& r : rows) {
        std::string k = row_key(r);
        if (std::find(seen.begin(), seen.end(), k) == seen.end()) {
            seen.push_back(k);
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace

SolutionTable bgp_join(std::span<const Triple> patterns, std::span<const Triple> data) {
    SolutionTable out;
    for (const auto& p : patterns) {
        for (auto& v : sparql::triple_vars(p)) {
            if (std::find(out.columns.begin(), out.columns.end(), v) == out.columns.end()) out.columns.push_back(v);
        }
    }
    for (const auto& s : join({patterns.begin(), patterns.end()}, data)) {
        Row row;
        for (const auto& c : out.columns) row.push_back(lookup(s, c));
        out.rows.push_back(std::move(row));
    }
    return out;
}

SolutionTable eval_sparql(const sparql::ValidatedQuery& validated, std::span<const Triple> data) {
    const auto& q = validated.query();

    std::vector<Solution> solutions;
    const sparql::UnionPattern* u = nullptr;
    for (const auto& e : q.where.elements) {
        if (const auto* p = std::get_if<sparql::UnionPattern>(&e)) u = p;
    }
    if (u != nullptr) {
        for (const auto& branch : u->branches) {
            for (auto& s : apply_filters(join(triples_of(branch), data), branch)) solutions.push_back(std::move(s));
        }
    } else {
        solutions = join(triples_of(q.where), data);
        for (const auto& e : q.where.elements) {
            if (const auto* o = std::get_if<sparql::OptionalPattern>(&e)) {
                solutions = left_join(std::move(solutions), o->triples, data);
            }
        }
    }
    solutions = apply_filters(std::move(solutions), q.where);

    SolutionTable out;
    out.columns = sparql::output_columns(q);
    const auto& proj = q.projection;
    if (proj.kind == sparql::ProjectionKind::Count) {
        const auto& c = *proj.count;
        std::vector<Row> groups;
        std::vector<std::int64_t> counts;
        for (const auto& s : solutions) {
            Row key;
            for (const auto& v : proj.vars) key.push_back(lookup(s, v));
            std::size_t i = 0;
            while (i < groups.size() && row_key(groups[i]) != row_key(key)) ++i;
            if (i == groups.size()) {
                groups.push_back(key);
                counts.push_back(0);
            }
            if (!std::holds_alternative<Unbound>(lookup(s, c.counted))) ++counts[i];
        }
        // Without GROUP BY the whole multiset is one group, even when empty.
        if (proj.vars.empty() && groups.empty()) {
            groups.emplace_back();
            counts.push_back(0);
        }
        for (std::size_t i = 0; i < groups.size(); ++i) {
            groups[i].push_back(Literal::integer(counts[i]));
            out.rows.push_back(std::move(groups[i]));
        }
    } else {
        for (const auto& s : solutions) {
            Row row;
            for (const auto& v : proj.vars) row.push_back(lookup(s, v));
            out.rows.push_back(std::move(row));
        }
        if (!q.group_by.empty()) out.rows = distinct(std::move(out.rows));
    }

    if (q.distinct) out.rows = distinct(std::move(out.rows));

    if (!q.order_by.empty()) {
        std::vector<std::pair<std::size_t, bool>> keys;
        for (const auto& k : q.order_by) {
            auto col = std::find(out.columns.begin(), out.columns.end(), k.var) - out.columns.begin();
            keys.emplace_back(static_cast<std::size_t>(col), k.direction == sparql::Direction::Desc);
        }
        std::stable_sort(out.rows.begin(), out.rows.end(), [&](const Row& a, const Row& b) {
            for (auto [col, desc] : keys) {
                int c = order_compare(a[col], b[col]);
                if (c != 0) return desc ? c > 0 : c < 0;
            }
            return false;
        });
        out.ordered = true;
    }

    auto size = static_cast<std::int64_t>(out.rows.size());
    std::int64_t first = std::min(q.offset.value_or(0), size);
    std::int64_t last = size;
    if (q.limit) last = std::min(size, first + std::min(*q.limit, size));
    out.rows = std::vector<Row>(out.rows.begin() + first, out.rows.begin() + last);
    return out;
}

}  // namespace s2g::oracle
