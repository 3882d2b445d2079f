#pragma once

// The traversal IR: an ordered list of steps, with nested traversals for
// match, union and coalesce.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "s2g/model.hpp"

namespace s2g::gremlin {

/// `P.op(literal)`
struct Comparison {
    CmpOp op = CmpOp::Eq;
    Literal value = Literal::integer(0);
    bool operator==(const Comparison&) const = default;
};

/// `P.op('var')`: compares against another binding.
struct VarComparison {
    CmpOp op = CmpOp::Eq;
    std::string var;
    bool operator==(const VarComparison&) const = default;
};

/// `P.a.or(P.b)...`: at least two literal alternatives.
struct AnyOf {
    std::vector<Comparison> alternatives;
    bool operator==(const AnyOf&) const = default;
};

using WherePredicate = std::variant<Comparison, VarComparison, AnyOf>;

/// Payload of a constant step; the translator only emits Unbound.
using ConstantValue = std::variant<Unbound, Literal>;

struct Traversal;

namespace step {

struct V {
    bool operator==(const V&) const = default;
};
struct Match {
    std::vector<Traversal> patterns;
    bool operator==(const Match&) const;
};
struct Union {
    std::vector<Traversal> branches;
    bool operator==(const Union&) const;
};
struct Coalesce {
    std::vector<Traversal> branches;
    bool operator==(const Coalesce&) const;
};
struct As {
    std::string name;
    bool operator==(const As&) const = default;
};
struct Out {
    std::string label;
    bool operator==(const Out&) const = default;
};
struct Values {
    std::string key;
    bool operator==(const Values&) const = default;
};
struct Label {
    bool operator==(const Label&) const = default;
};
struct Has {
    std::string key;
    Comparison pred;
    bool operator==(const Has&) const = default;
};
struct HasLabel {
    std::string value;
    bool operator==(const HasLabel&) const = default;
};
struct HasId {
    std::string id;
    bool operator==(const HasId&) const = default;
};
struct Where {
    std::string var;
    WherePredicate pred;
    bool operator==(const Where&) const = default;
};
struct Constant {
    ConstantValue value;
    bool operator==(const Constant&) const = default;
};
struct Select {
    std::vector<std::string> vars;
    bool operator==(const Select&) const = default;
};
struct Dedup {
    bool operator==(const Dedup&) const = default;
};
enum class Direction { Asc, Desc };
struct OrderKey {
    std::string var;
    Direction direction = Direction::Asc;
    bool operator==(const OrderKey&) const = default;
};
struct Order {
    std::vector<OrderKey> keys;
    bool operator==(const Order&) const = default;
};
/// Keeps rows [lo, hi); no `hi` means unbounded.
struct Range {
    std::int64_t lo = 0;
    std::optional<std::int64_t> hi;
    bool operator==(const Range&) const = default;
};
/// One row holding the number of rows whose `counted` binding is bound.
struct Count {
    std::string counted;
    std::string alias;
    bool operator==(const Count&) const = default;
};
/// One row per distinct key tuple, with the bound-`counted` count in `alias`.
struct GroupCount {
    std::vector<std::string> keys;
    std::string counted;
    std::string alias;
    bool operator==(const GroupCount&) const = default;
};

}  // namespace step

using Step = std::variant<step::V, step::Match, step::Union, step::Coalesce, step::As, step::Out, step::Values,
                          step::Label, step::Has, step::HasLabel, step::HasId, step::Where, step::Constant,
                          step::Select, step::Dedup, step::Order, step::Range, step::Count, step::GroupCount>;

struct Traversal {
    std::vector<Step> steps;
    bool operator==(const Traversal&) const = default;
};

/// Structural checks: Range bounds, AnyOf arity, non-empty nested traversals
/// that never start with V, V only as the first top-level step. Returns a
/// description of the first problem, or nothing if well formed.
std::optional<std::string> check_well_formed(const Traversal& t);

/// Steps of type S anywhere in t, including nested traversals.
template <class S>
std::size_t count_steps(const Traversal& t) {
    std::size_t n = 0;
    for (const auto& s : t.steps) {
        if (std::holds_alternative<S>(s)) ++n;
        const std::vector<Traversal>* nested = nullptr;
        if (const auto* m = std::get_if<step::Match>(&s)) nested = &m->patterns;
        if (const auto* u = std::get_if<step::Union>(&s)) nested = &u->branches;
        if (const auto* c = std::get_if<step::Coalesce>(&s)) nested = &c->branches;
        if (nested) {
            for (const auto& sub : *nested) n += count_steps<S>(sub);
        }
    }
    return n;
}

}  // namespace s2g::gremlin
