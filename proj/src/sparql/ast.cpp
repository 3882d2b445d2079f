#include "s2g/sparql/ast.hpp"

#include <algorithm>

namespace s2g::sparql {

FilterExpr FilterExpr::make_and(FilterExpr l, FilterExpr r) {
    FilterExpr e;
    e.kind = Kind::And;
    e.operands.push_back(std::move(l));
    e.operands.push_back(std::move(r));
    return e;
}

FilterExpr FilterExpr::make_or(FilterExpr l, FilterExpr r) {
    FilterExpr e;
    e.kind = Kind::Or;
    e.operands.push_back(std::move(l));
    e.operands.push_back(std::move(r));
    return e;
}

FilterExpr FilterExpr::make_cmp(Comparison c) {
    FilterExpr e;
    e.kind = Kind::Cmp;
    e.comparison = std::move(c);
    return e;
}

FilterExpr FilterExpr::make_regex(std::string text) {
    FilterExpr e;
    e.kind = Kind::Regex;
    e.regex_text = std::move(text);
    return e;
}

bool UnionPattern::operator==(const UnionPattern& other) const { return branches == other.branches; }

std::vector<std::string> output_columns(const SelectQuery& query) {
    std::vector<std::string> cols = query.projection.vars;
    if (query.projection.count) cols.push_back(query.projection.count->alias);
    return cols;
}

std::vector<std::string> triple_vars(const Triple& triple) {
    std::vector<std::string> out;
    for (const Term* t : {&triple.s, &triple.p, &triple.o}) {
        if (const auto* v = std::get_if<Var>(t)) {
            if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
        }
    }
    return out;
}

namespace {

void collect(const GroupPattern& g, std::vector<std::string>& out) {
    auto add = [&](const Triple& t) {
        for (auto& v : triple_vars(t)) {
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
    };
    for (const auto& e : g.elements) {
        if (const auto* t = std::get_if<Triple>(&e)) {
            add(*t);
        } else if (const auto* o = std::get_if<OptionalPattern>(&e)) {
            for (const auto& t2 : o->triples) add(t2);
        } else if (const auto* u = std::get_if<UnionPattern>(&e)) {
            for (const auto& b : u->branches) collect(b, out);
        }
    }
}

}  // namespace

std::vector<std::string> pattern_vars(const GroupPattern& group) {
    std::vector<std::string> out;
    collect(group, out);
    return out;
}

}  // namespace s2g::sparql
