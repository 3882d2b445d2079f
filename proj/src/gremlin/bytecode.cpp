#include "s2g/gremlin/bytecode.hpp"

#include <limits>

#include "json.hpp"
#include "s2g/error.hpp"

namespace s2g::gremlin {

using json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// -- encoding ----------------------------------------------------------------

json encode_literal(const Literal& lit) {
    switch (lit.kind()) {
        case LiteralKind::String: return lit.as_string();
        case LiteralKind::Integer: return lit.as_integer();
        case LiteralKind::Double: return lit.as_double();
        case LiteralKind::Boolean: return lit.as_boolean();
    }
    return nullptr;
}

json encode_pred(CmpOp op, json value) {
    json p = json::object();
    p["@type"] = "P";
    p["op"] = std::string(cmp_op_name(op));
    p["value"] = std::move(value);
    return p;
}

json encode_comparison(const Comparison& c) { return encode_pred(c.op, encode_literal(c.value)); }

json encode_traversal(const Traversal& t);

json encode_nested(const std::string& op, const std::vector<Traversal>& subs) {
    json instr = json::array({op});
    for (const auto& s : subs) instr.push_back(encode_traversal(s));
    return instr;
}

json encode_step(const Step& step) {
    return std::visit(
        Overloaded{
            [](const step::V&) { return json::array({"V"}); },
            [](const step::Match& s) { return encode_nested("match", s.patterns); },
            [](const step::Union& s) { return encode_nested("union", s.branches); },
            [](const step::Coalesce& s) { return encode_nested("coalesce", s.branches); },
            [](const step::As& s) { return json::array({"as", s.name}); },
            [](const step::Out& s) { return json::array({"out", s.label}); },
            [](const step::Values& s) { return json::array({"values", s.key}); },
            [](const step::Label&) { return json::array({"label"}); },
            [](const step::Has& s) { return json::array({"has", s.key, encode_comparison(s.pred)}); },
            [](const step::HasLabel& s) { return json::array({"hasLabel", s.value}); },
            [](const step::HasId& s) { return json::array({"hasId", s.id}); },
            [](const step::Where& s) {
                json pred = std::visit(Overloaded{
                                           [](const Comparison& c) { return encode_comparison(c); },
                                           [](const VarComparison& c) {
                                               json ref = json::object();
                                               ref["@type"] = "varref";
                                               ref["name"] = c.var;
                                               return encode_pred(c.op, std::move(ref));
                                           },
                                           [](const AnyOf& any) {
                                               json p = json::object();
                                               p["@type"] = "P";
                                               p["op"] = "or";
                                               json preds = json::array();
                                               for (const auto& c : any.alternatives) {
                                                   preds.push_back(encode_comparison(c));
                                               }
                                               p["preds"] = std::move(preds);
                                               return p;
                                           },
                                       },
                                       s.pred);
                return json::array({"where", s.var, std::move(pred)});
            },
            [](const step::Constant& s) {
                json value;
                if (std::holds_alternative<Unbound>(s.value)) {
                    value = json::object();
                    value["@type"] = "unbound";
                } else {
                    value = encode_literal(std::get<Literal>(s.value));
                }
                return json::array({"constant", std::move(value)});
            },
            [](const step::Select& s) {
                json instr = json::array({"select"});
                for (const auto& v : s.vars) instr.push_back(v);
                return instr;
            },
            [](const step::Dedup&) { return json::array({"dedup"}); },
            [](const step::Order& s) {
                json instr = json::array({"order"});
                for (const auto& k : s.keys) {
                    instr.push_back(k.var);
                    instr.push_back(k.direction == step::Direction::Asc ? "asc" : "desc");
                }
                return instr;
            },
            [](const step::Range& s) { return json::array({"range", s.lo, s.hi ? *s.hi : std::int64_t{-1}}); },
            [](const step::Count& s) { return json::array({"count", s.counted, s.alias}); },
            [](const step::GroupCount& s) {
                json instr = json::array({"groupCount"});
                for (const auto& k : s.keys) instr.push_back(k);
                instr.push_back(s.counted);
                instr.push_back(s.alias);
                return instr;
            },
        },
        step);
}

json encode_traversal(const Traversal& t) {
    json doc = json::object();
    doc["@type"] = "traversal";
    json steps = json::array();
    for (const auto& s : t.steps) steps.push_back(encode_step(s));
    doc["steps"] = std::move(steps);
    return doc;
}

// -- decoding ----------------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::BytecodeDecodeError, path + ": " + msg);
}

void expect_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    if (!j.is_object()) fail(path, "expected an object");
    if (j.size() != keys.size()) fail(path, "unexpected set of keys");
    for (const char* k : keys) {
        if (!j.contains(k)) fail(path + "." + k, "missing key");
    }
}

std::string expect_type(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find("@type");
    if (it == j.end()) fail(path + ".@type", "missing @type");
    if (!it->is_string()) fail(path + ".@type", "@type must be a string");
    return it->get<std::string>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::int64_t as_int(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) {
        auto u = j.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) fail(path, "integer out of range");
        return static_cast<std::int64_t>(u);
    }
    if (j.is_number_integer()) return j.get<std::int64_t>();
    fail(path, "expected an integer");
}

Literal decode_literal(const json& j, const std::string& path) {
    if (j.is_string()) return Literal::string(j.get<std::string>());
    if (j.is_boolean()) return Literal::boolean(j.get<bool>());
    if (j.is_number_integer() || j.is_number_unsigned()) return Literal::integer(as_int(j, path));
    if (j.is_number_float()) return Literal::real(j.get<double>());
    fail(path, "expected a literal");
}

CmpOp decode_op(const json& j, const std::string& path) {
    auto op = cmp_op_from_name(as_string(j, path));
    if (!op) fail(path, "unknown predicate operator '" + j.get<std::string>() + "'");
    return *op;
}

Comparison decode_comparison(const json& j, const std::string& path) {
    if (expect_type(j, path) != "P") fail(path + ".@type", "expected \"P\"");
    expect_keys(j, path, {"@type", "op", "value"});
    return Comparison{decode_op(j["op"], path + ".op"), decode_literal(j["value"], path + ".value")};
}

WherePredicate decode_where_pred(const json& j, const std::string& path) {
    if (expect_type(j, path) != "P") fail(path + ".@type", "expected \"P\"");
    if (j.contains("op") && j["op"] == "or") {
        expect_keys(j, path, {"@type", "op", "preds"});
        const json& preds = j["preds"];
        if (!preds.is_array()) fail(path + ".preds", "expected an array");
        AnyOf any;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            any.alternatives.push_back(decode_comparison(preds[i], path + ".preds[" + std::to_string(i) + "]"));
        }
        if (any.alternatives.size() < 2) fail(path + ".preds", "or-predicate needs at least two alternatives");
        return any;
    }
    expect_keys(j, path, {"@type", "op", "value"});
    CmpOp op = decode_op(j["op"], path + ".op");
    const json& value = j["value"];
    if (value.is_object()) {
        std::string vpath = path + ".value";
        if (expect_type(value, vpath) != "varref") fail(vpath + ".@type", "expected \"varref\"");
        expect_keys(value, vpath, {"@type", "name"});
        return VarComparison{op, as_string(value["name"], vpath + ".name")};
    }
    return Comparison{op, decode_literal(value, path + ".value")};
}

Traversal decode_traversal(const json& j, const std::string& path);

Step decode_step(const json& instr, const std::string& path) {
    if (!instr.is_array() || instr.empty()) fail(path, "instruction must be a non-empty array");
    std::string op = as_string(instr[0], path + "[0]");
    auto arg = [&](std::size_t i) -> const json& { return instr[i]; };
    auto arg_path = [&](std::size_t i) { return path + "[" + std::to_string(i) + "]"; };
    auto arity = [&](std::size_t n) {
        if (instr.size() != n + 1) {
            fail(path, "'" + op + "' takes " + std::to_string(n) + " argument(s), got " + std::to_string(instr.size() - 1));
        }
    };
    auto str = [&](std::size_t i) { return as_string(arg(i), arg_path(i)); };
    auto subs = [&] {
        if (instr.size() < 2) fail(path, "'" + op + "' needs at least one traversal");
        std::vector<Traversal> out;
        for (std::size_t i = 1; i < instr.size(); ++i) out.push_back(decode_traversal(arg(i), arg_path(i)));
        return out;
    };

    if (op == "V") { arity(0); return step::V{}; }
    if (op == "match") return step::Match{subs()};
    if (op == "union") return step::Union{subs()};
    if (op == "coalesce") return step::Coalesce{subs()};
    if (op == "as") { arity(1); return step::As{str(1)}; }
    if (op == "out") { arity(1); return step::Out{str(1)}; }
    if (op == "values") { arity(1); return step::Values{str(1)}; }
    if (op == "label") { arity(0); return step::Label{}; }
    if (op == "has") { arity(2); return step::Has{str(1), decode_comparison(arg(2), arg_path(2))}; }
    if (op == "hasLabel") { arity(1); return step::HasLabel{str(1)}; }
    if (op == "hasId") { arity(1); return step::HasId{str(1)}; }
    if (op == "where") { arity(2); return step::Where{str(1), decode_where_pred(arg(2), arg_path(2))}; }
    if (op == "constant") {
        arity(1);
        if (arg(1).is_object()) {
            if (expect_type(arg(1), arg_path(1)) != "unbound") fail(arg_path(1) + ".@type", "expected \"unbound\"");
            expect_keys(arg(1), arg_path(1), {"@type"});
            return step::Constant{Unbound{}};
        }
        return step::Constant{decode_literal(arg(1), arg_path(1))};
    }
    if (op == "select") {
        step::Select s;
        for (std::size_t i = 1; i < instr.size(); ++i) s.vars.push_back(str(i));
        return s;
    }
    if (op == "dedup") { arity(0); return step::Dedup{}; }
    if (op == "order") {
        if (instr.size() % 2 != 1) fail(path, "'order' takes (var, direction) pairs");
        step::Order s;
        for (std::size_t i = 1; i < instr.size(); i += 2) {
            std::string dir = str(i + 1);
            if (dir != "asc" && dir != "desc") fail(arg_path(i + 1), "direction must be \"asc\" or \"desc\"");
            s.keys.push_back({str(i), dir == "asc" ? step::Direction::Asc : step::Direction::Desc});
        }
        return s;
    }
    if (op == "range") {
        arity(2);
        std::int64_t lo = as_int(arg(1), arg_path(1));
        std::int64_t hi = as_int(arg(2), arg_path(2));
        if (lo < 0) fail(arg_path(1), "lower bound must be non-negative");
        if (hi != -1 && hi < lo) fail(arg_path(2), "upper bound must be -1 or at least the lower bound");
        return step::Range{lo, hi == -1 ? std::nullopt : std::optional<std::int64_t>(hi)};
    }
    if (op == "count") { arity(2); return step::Count{str(1), str(2)}; }
    if (op == "groupCount") {
        if (instr.size() < 3) fail(path, "'groupCount' needs a counted variable and an alias");
        step::GroupCount s;
        for (std::size_t i = 1; i + 2 < instr.size(); ++i) s.keys.push_back(str(i));
        s.counted = str(instr.size() - 2);
        s.alias = str(instr.size() - 1);
        return s;
    }
    fail(path + "[0]", "unknown operator '" + op + "'");
}

Traversal decode_traversal(const json& j, const std::string& path) {
    if (expect_type(j, path) != "traversal") fail(path + ".@type", "expected \"traversal\"");
    expect_keys(j, path, {"@type", "steps"});
    const json& steps = j["steps"];
    if (!steps.is_array()) fail(path + ".steps", "expected an array");
    Traversal t;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        t.steps.push_back(decode_step(steps[i], path + ".steps[" + std::to_string(i) + "]"));
    }
    return t;
}

}  // namespace

std::string to_bytecode(const Traversal& traversal) {
    return encode_traversal(traversal).dump(-1, ' ', false, json::error_handler_t::replace);
}

Traversal from_bytecode(std::string_view document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::BytecodeDecodeError, std::string("$: malformed JSON: ") + e.what());
    }
    return decode_traversal(j, "$");
}

}  // namespace s2g::gremlin
