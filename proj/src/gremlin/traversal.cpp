#include "s2g/gremlin/traversal.hpp"

namespace s2g::gremlin {

namespace step {
bool Match::operator==(const Match& o) const { return patterns == o.patterns; }
bool Union::operator==(const Union& o) const { return branches == o.branches; }
bool Coalesce::operator==(const Coalesce& o) const { return branches == o.branches; }
}  // namespace step

namespace {

std::optional<std::string> check(const Traversal& t, bool nested) {
    if (nested && t.steps.empty()) return "nested traversal is empty";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const Step& s = t.steps[i];
        if (std::holds_alternative<step::V>(s) && (nested || i != 0)) {
            return nested ? "nested traversal contains V()" : "V() is only allowed as the first step";
        }
        const std::vector<Traversal>* subs = nullptr;
        if (const auto* m = std::get_if<step::Match>(&s)) subs = &m->patterns;
        if (const auto* u = std::get_if<step::Union>(&s)) subs = &u->branches;
        if (const auto* c = std::get_if<step::Coalesce>(&s)) subs = &c->branches;
        if (subs) {
            if (subs->empty()) return "match/union/coalesce without sub-traversals";
            for (const auto& sub : *subs) {
                if (auto err = check(sub, true)) return err;
            }
        }
        if (const auto* r = std::get_if<step::Range>(&s)) {
            if (r->lo < 0) return "range lower bound is negative";
            if (r->hi && *r->hi < r->lo) return "range upper bound is below the lower bound";
        }
        if (const auto* w = std::get_if<step::Where>(&s)) {
            if (const auto* any = std::get_if<AnyOf>(&w->pred); any && any->alternatives.size() < 2) {
                return "or-predicate needs at least two alternatives";
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> check_well_formed(const Traversal& t) { return check(t, false); }

}  // namespace s2g::gremlin
