#include "s2g/gremlin/groovy.hpp"

#include <cctype>
#include <charconv>
#include <memory>

#include "s2g/error.hpp"

namespace s2g::gremlin {

namespace {

inline constexpr std::string_view kUnboundSentinel = "urn:pg:unbound";

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// -- rendering ---------------------------------------------------------------

std::string quote_name(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        switch (c) {
            case '\'': out += "\\'"; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "'";
}

std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '$': out += "\\$"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

std::string literal_text(const Literal& lit) {
    return lit.kind() == LiteralKind::String ? quote_string(lit.as_string()) : lexical_form(lit);
}

std::string pred_text(CmpOp op, const std::string& arg) { return "P." + std::string(cmp_op_name(op)) + "(" + arg + ")"; }

std::string render_steps(const Traversal& t);

std::string nested(const std::vector<Traversal>& subs) {
    std::string out;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (i) out += ", ";
        out += "__." + render_steps(subs[i]);
    }
    return out;
}

std::string render_step(const Step& s) {
    return std::visit(
        Overloaded{
            [](const step::V&) { return std::string("V()"); },
            [](const step::Match& m) { return "match(" + nested(m.patterns) + ")"; },
            [](const step::Union& u) { return "union(" + nested(u.branches) + ")"; },
            [](const step::Coalesce& c) { return "coalesce(" + nested(c.branches) + ")"; },
            [](const step::As& a) { return "as(" + quote_name(a.name) + ")"; },
            [](const step::Out& o) { return "out(" + quote_name(o.label) + ")"; },
            [](const step::Values& v) { return "values(" + quote_name(v.key) + ")"; },
            [](const step::Label&) { return std::string("label()"); },
            [](const step::Has& h) {
                return "has(" + quote_name(h.key) + ", " + pred_text(h.pred.op, literal_text(h.pred.value)) + ")";
            },
            [](const step::HasLabel& h) { return "hasLabel(" + quote_name(h.value) + ")"; },
            [](const step::HasId& h) { return "hasId(" + quote_name(h.id) + ")"; },
            [](const step::Where& w) {
                std::string pred = std::visit(
                    Overloaded{
                        [](const Comparison& c) { return pred_text(c.op, literal_text(c.value)); },
                        [](const VarComparison& c) { return pred_text(c.op, quote_name(c.var)); },
                        [](const AnyOf& any) {
                            std::string out;
                            for (std::size_t i = 0; i < any.alternatives.size(); ++i) {
                                const auto& c = any.alternatives[i];
                                std::string p = pred_text(c.op, literal_text(c.value));
                                out += i == 0 ? p : ".or(" + p + ")";
                            }
                            return out;
                        },
                    },
                    w.pred);
                return "where(" + quote_name(w.var) + ", " + pred + ")";
            },
            [](const step::Constant& c) {
                if (std::holds_alternative<Unbound>(c.value)) {
                    return "constant(" + quote_name(std::string(kUnboundSentinel)) + ")";
                }
                return "constant(" + literal_text(std::get<Literal>(c.value)) + ")";
            },
            [](const step::Select& s) {
                std::string out = "select(";
                for (std::size_t i = 0; i < s.vars.size(); ++i) {
                    if (i) out += ",";
                    out += quote_name(s.vars[i]);
                }
                return out + ")";
            },
            [](const step::Dedup&) { return std::string("dedup()"); },
            [](const step::Order& o) {
                std::string out = "order()";
                for (const auto& k : o.keys) {
                    out += ".by(" + quote_name(k.var) + (k.direction == step::Direction::Asc ? ", asc)" : ", desc)");
                }
                return out;
            },
            [](const step::Range& r) {
                return "range(" + std::to_string(r.lo) + ", " + (r.hi ? std::to_string(*r.hi) : std::string("-1")) + ")";
            },
            [](const step::Count& c) {
                return "count().by(__.select(" + quote_name(c.counted) + ")).as(" + quote_name(c.alias) + ")";
            },
            [](const step::GroupCount& g) {
                std::string out = "groupCount()";
                for (const auto& k : g.keys) out += ".by(__.select(" + quote_name(k) + "))";
                out += ".by(__.select(" + quote_name(g.counted) + ").count())";
                return out + ".as(" + quote_name(g.alias) + ")";
            },
        },
        s);
}

std::string render_steps(const Traversal& t) {
    if (t.steps.empty()) return "identity()";
    std::string out;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (i) out += ".";
        out += render_step(t.steps[i]);
    }
    return out;
}

// -- reading -----------------------------------------------------------------

struct Chain;

struct Arg {
    enum class Kind { Name, String, Number, Bool, Ident, Chain };
    Kind kind = Kind::Name;
    std::string text;
    std::shared_ptr<Chain> chain;
};

struct Call {
    std::string name;
    std::vector<Arg> args;
};

/// `head.call(...).call(...)` with head one of g, __, P.
struct Chain {
    std::string head;
    std::vector<Call> calls;
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    Chain top() {
        Chain c = chain();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        if (c.head != "g") fail("traversal must start with 'g.'");
        return c;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::GroovyDecodeError, msg + " at offset " + std::to_string(pos_));
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected an identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    Chain chain() {
        Chain c;
        c.head = ident();
        if (c.head != "g" && c.head != "__" && c.head != "P") fail("unexpected '" + c.head + "'");
        while (eat('.')) {
            Call call;
            call.name = ident();
            expect('(');
            if (!eat(')')) {
                do {
                    call.args.push_back(arg());
                } while (eat(','));
                expect(')');
            }
            c.calls.push_back(std::move(call));
        }
        return c;
    }

    std::string quoted(char q) {
        ++pos_;
        std::string out;
        for (;;) {
            if (pos_ >= text_.size()) fail("unterminated string");
            char c = text_[pos_++];
            if (c == q) return out;
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("unterminated string");
                char e = text_[pos_++];
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 't': out += '\t'; break;
                    case '\'': case '"': case '\\': case '$': out += e; break;
                    default: fail("unknown escape");
                }
            } else {
                out += c;
            }
        }
    }

    Arg arg() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        Arg a;
        if (c == '\'') {
            a.kind = Arg::Kind::Name;
            a.text = quoted('\'');
        } else if (c == '"') {
            a.kind = Arg::Kind::String;
            a.text = quoted('"');
        } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_++;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '.' || text_[pos_] == '+' || text_[pos_] == '-')) {
                ++pos_;
            }
            a.kind = Arg::Kind::Number;
            a.text = std::string(text_.substr(start, pos_ - start));
        } else {
            std::size_t save = pos_;
            std::string word = ident();
            if (word == "__" || word == "P") {
                pos_ = save;
                a.kind = Arg::Kind::Chain;
                a.chain = std::make_shared<Chain>(chain());
            } else if (word == "true" || word == "false") {
                a.kind = Arg::Kind::Bool;
                a.text = word;
            } else {
                a.kind = Arg::Kind::Ident;
                a.text = word;
            }
        }
        return a;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::GroovyDecodeError, msg); }

Literal number_literal(const std::string& text) {
    bool is_double = text.find_first_of(".eE") != std::string::npos;
    const char* b = text.data();
    const char* e = b + text.size();
    if (is_double) {
        double d = 0;
        auto [p, ec] = std::from_chars(b, e, d);
        if (ec != std::errc() || p != e) bad("malformed number '" + text + "'");
        return Literal::real(d);
    }
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(b, e, i);
    if (ec != std::errc() || p != e) bad("malformed number '" + text + "'");
    return Literal::integer(i);
}

Literal arg_literal(const Arg& a) {
    switch (a.kind) {
        case Arg::Kind::String: return Literal::string(a.text);
        case Arg::Kind::Number: return number_literal(a.text);
        case Arg::Kind::Bool: return Literal::boolean(a.text == "true");
        default: bad("expected a literal");
    }
}

const std::string& name_arg(const Call& c, std::size_t i) {
    if (i >= c.args.size() || c.args[i].kind != Arg::Kind::Name) bad("'" + c.name + "' expects a quoted name");
    return c.args[i].text;
}

void arity(const Call& c, std::size_t n) {
    if (c.args.size() != n) bad("'" + c.name + "' takes " + std::to_string(n) + " argument(s)");
}

CmpOp op_named(const std::string& name) {
    auto op = cmp_op_from_name(name);
    if (!op) bad("unknown predicate P." + name);
    return *op;
}

// P.op(x) where x is a literal or (if allowed) a quoted variable name.
WherePredicate single_pred(const Call& call, bool allow_var) {
    arity(call, 1);
    CmpOp op = op_named(call.name);
    const Arg& a = call.args[0];
    if (a.kind == Arg::Kind::Name) {
        if (!allow_var) bad("expected a literal comparand");
        return VarComparison{op, a.text};
    }
    return Comparison{op, arg_literal(a)};
}

WherePredicate predicate(const Arg& a, bool allow_var) {
    if (a.kind != Arg::Kind::Chain || a.chain->head != "P" || a.chain->calls.empty()) bad("expected a P predicate");
    const auto& calls = a.chain->calls;
    if (calls.size() == 1) return single_pred(calls[0], allow_var);
    AnyOf any;
    auto first = single_pred(calls[0], false);
    any.alternatives.push_back(std::get<Comparison>(first));
    for (std::size_t i = 1; i < calls.size(); ++i) {
        if (calls[i].name != "or") bad("expected .or(...)");
        arity(calls[i], 1);
        auto alt = predicate(calls[i].args[0], false);
        if (!std::holds_alternative<Comparison>(alt)) bad("nested or-predicates are not supported");
        any.alternatives.push_back(std::get<Comparison>(alt));
    }
    return any;
}

Traversal convert(const Chain& chain);

std::vector<Traversal> nested_args(const Call& c) {
    std::vector<Traversal> out;
    for (const auto& a : c.args) {
        if (a.kind != Arg::Kind::Chain || a.chain->head != "__") bad("'" + c.name + "' expects __ traversals");
        out.push_back(convert(*a.chain));
    }
    return out;
}

// `.by(__.select('x'))` → x; with `counted`, `.by(__.select('x').count())`.
std::optional<std::string> select_by(const Call& c, bool counted) {
    if (c.name != "by" || c.args.size() != 1 || c.args[0].kind != Arg::Kind::Chain) return std::nullopt;
    const Chain& ch = *c.args[0].chain;
    if (ch.head != "__" || ch.calls.size() != (counted ? 2u : 1u) || ch.calls[0].name != "select") return std::nullopt;
    if (ch.calls[0].args.size() != 1 || ch.calls[0].args[0].kind != Arg::Kind::Name) return std::nullopt;
    if (counted && (ch.calls[1].name != "count" || !ch.calls[1].args.empty())) return std::nullopt;
    return ch.calls[0].args[0].text;
}

Traversal convert(const Chain& chain) {
    Traversal t;
    const auto& calls = chain.calls;
    if (chain.head == "__" && calls.size() == 1 && calls[0].name == "identity" && calls[0].args.empty()) return t;
    for (std::size_t i = 0; i < calls.size(); ++i) {
        const Call& c = calls[i];
        const std::string& n = c.name;
        if (n == "V") { arity(c, 0); t.steps.push_back(step::V{}); }
        else if (n == "match") t.steps.push_back(step::Match{nested_args(c)});
        else if (n == "union") t.steps.push_back(step::Union{nested_args(c)});
        else if (n == "coalesce") t.steps.push_back(step::Coalesce{nested_args(c)});
        else if (n == "as") { arity(c, 1); t.steps.push_back(step::As{name_arg(c, 0)}); }
        else if (n == "out") { arity(c, 1); t.steps.push_back(step::Out{name_arg(c, 0)}); }
        else if (n == "values") { arity(c, 1); t.steps.push_back(step::Values{name_arg(c, 0)}); }
        else if (n == "label") { arity(c, 0); t.steps.push_back(step::Label{}); }
        else if (n == "has") {
            arity(c, 2);
            auto pred = predicate(c.args[1], false);
            if (!std::holds_alternative<Comparison>(pred)) bad("has() takes a single literal predicate");
            t.steps.push_back(step::Has{name_arg(c, 0), std::get<Comparison>(pred)});
        }
        else if (n == "hasLabel") { arity(c, 1); t.steps.push_back(step::HasLabel{name_arg(c, 0)}); }
        else if (n == "hasId") { arity(c, 1); t.steps.push_back(step::HasId{name_arg(c, 0)}); }
        else if (n == "where") { arity(c, 2); t.steps.push_back(step::Where{name_arg(c, 0), predicate(c.args[1], true)}); }
        else if (n == "constant") {
            arity(c, 1);
            if (c.args[0].kind == Arg::Kind::Name) {
                if (c.args[0].text != kUnboundSentinel) bad("constant() of a quoted name must be the unbound sentinel");
                t.steps.push_back(step::Constant{Unbound{}});
            } else {
                t.steps.push_back(step::Constant{arg_literal(c.args[0])});
            }
        }
        else if (n == "select") {
            step::Select s;
            for (std::size_t a = 0; a < c.args.size(); ++a) s.vars.push_back(name_arg(c, a));
            t.steps.push_back(std::move(s));
        }
        else if (n == "dedup") { arity(c, 0); t.steps.push_back(step::Dedup{}); }
        else if (n == "order") {
            arity(c, 0);
            step::Order o;
            while (i + 1 < calls.size() && calls[i + 1].name == "by") {
                const Call& by = calls[++i];
                arity(by, 2);
                const Arg& dir = by.args[1];
                if (dir.kind != Arg::Kind::Ident || (dir.text != "asc" && dir.text != "desc")) bad("order().by needs asc or desc");
                o.keys.push_back({name_arg(by, 0), dir.text == "asc" ? step::Direction::Asc : step::Direction::Desc});
            }
            t.steps.push_back(std::move(o));
        }
        else if (n == "range") {
            arity(c, 2);
            auto lo = arg_literal(c.args[0]);
            auto hi = arg_literal(c.args[1]);
            if (lo.kind() != LiteralKind::Integer || hi.kind() != LiteralKind::Integer) bad("range() takes integers");
            if (lo.as_integer() < 0 || (hi.as_integer() != -1 && hi.as_integer() < lo.as_integer())) bad("bad range bounds");
            t.steps.push_back(step::Range{lo.as_integer(), hi.as_integer() == -1 ? std::nullopt
                                                                                  : std::optional(hi.as_integer())});
        }
        else if (n == "count") {
            arity(c, 0);
            if (i + 2 >= calls.size()) bad("count() must be followed by .by(...).as(...)");
            auto counted = select_by(calls[i + 1], false);
            if (!counted || calls[i + 2].name != "as") bad("count() must be followed by .by(__.select(..)).as(..)");
            arity(calls[i + 2], 1);
            t.steps.push_back(step::Count{*counted, name_arg(calls[i + 2], 0)});
            i += 2;
        }
        else if (n == "groupCount") {
            arity(c, 0);
            step::GroupCount g;
            std::size_t j = i + 1;
            for (;; ++j) {
                if (j >= calls.size()) bad("groupCount() is missing its counted variable");
                if (auto key = select_by(calls[j], false)) {
                    g.keys.push_back(*key);
                    continue;
                }
                auto counted = select_by(calls[j], true);
                if (!counted) bad("malformed groupCount() modulator");
                g.counted = *counted;
                break;
            }
            if (j + 1 >= calls.size() || calls[j + 1].name != "as") bad("groupCount() must end with .as(..)");
            arity(calls[j + 1], 1);
            g.alias = name_arg(calls[j + 1], 0);
            t.steps.push_back(std::move(g));
            i = j + 1;
        }
        else bad("unknown step '" + n + "'");
    }
    return t;
}

}  // namespace

std::string to_groovy(const Traversal& traversal) {
    if (traversal.steps.empty()) return "g";
    return "g." + render_steps(traversal);
}

Traversal from_groovy(std::string_view text) {
    Reader reader(text);
    return convert(reader.top());
}

}  // namespace s2g::gremlin
