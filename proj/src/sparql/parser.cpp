#include "s2g/sparql/parser.hpp"

#include <algorithm>
#include <set>

#include "s2g/error.hpp"
#include "s2g/sparql/lexer.hpp"

namespace s2g::sparql {

namespace {

bool is_literal_token(TokenKind k) {
    return k == TokenKind::String || k == TokenKind::Integer || k == TokenKind::Double || k == TokenKind::Boolean;
}

std::optional<CmpOp> comparison_op(TokenKind k) {
    switch (k) {
        case TokenKind::Eq: return CmpOp::Eq;
        case TokenKind::Neq: return CmpOp::Neq;
        case TokenKind::Lt: return CmpOp::Lt;
        case TokenKind::Gt: return CmpOp::Gt;
        case TokenKind::Le: return CmpOp::Lte;
        case TokenKind::Ge: return CmpOp::Gte;
        default: return std::nullopt;
    }
}

std::string kw(Keyword k) { return std::string(keyword_text(k)); }

enum class GroupMode { Full, TriplesOnly, TriplesAndFilters };

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    SelectQuery query() {
        SelectQuery q;
        while (is_kw(Keyword::Prefix)) q.prologue.push_back(prefix_decl());

        expect_kw(Keyword::Select, {kw(Keyword::Prefix), kw(Keyword::Select)});
        if (is_kw(Keyword::Distinct)) {
            next();
            q.distinct = true;
        }
        q.projection = projection();
        expect_kw(Keyword::Where, {kw(Keyword::Where)});
        q.where = group(GroupMode::Full);

        if (is_kw(Keyword::Group)) {
            next();
            expect_kw(Keyword::By, {kw(Keyword::By)});
            do {
                q.group_by.push_back(expect(TokenKind::Var, {"variable"}).text);
            } while (peek().kind == TokenKind::Var);
        }
        if (is_kw(Keyword::Order)) {
            next();
            expect_kw(Keyword::By, {kw(Keyword::By)});
            do {
                q.order_by.push_back(order_key());
            } while (peek().kind == TokenKind::Var || is_kw(Keyword::Asc) || is_kw(Keyword::Desc));
        }
        for (int i = 0; i < 2; ++i) {
            if (is_kw(Keyword::Limit) && !q.limit) {
                next();
                q.limit = count_value();
            } else if (is_kw(Keyword::Offset) && !q.offset) {
                next();
                q.offset = count_value();
            }
        }
        if (peek().kind != TokenKind::End) {
            std::vector<std::string> expected;
            if (q.group_by.empty() && q.order_by.empty() && !q.limit && !q.offset) expected.push_back(kw(Keyword::Group));
            if (q.order_by.empty() && !q.limit && !q.offset) expected.push_back(kw(Keyword::Order));
            if (!q.limit) expected.push_back(kw(Keyword::Limit));
            if (!q.offset) expected.push_back(kw(Keyword::Offset));
            expected.push_back(describe(TokenKind::End));
            fail_expected(expected);
        }

        if (q.projection.kind == ProjectionKind::Star) q.projection.vars = star_vars(q.where);
        return q;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool is_kw(Keyword k, std::size_t ahead = 0) const {
        return peek(ahead).kind == TokenKind::Keyword && peek(ahead).keyword == k;
    }

    static std::string shown(const Token& t) {
        if (t.kind == TokenKind::End) return "end of input";
        return "'" + render_token(t) + "'";
    }

    [[noreturn]] void fail_expected(std::vector<std::string> expected, const std::string& note = {}) const {
        const Token& t = peek();
        std::string msg = "unexpected " + shown(t) + ", expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        if (!note.empty()) msg += " (" + note + ")";
        throw Error(ErrorCode::ParseError, msg, t.pos, std::move(expected));
    }

    [[noreturn]] void fail_at(const Token& t, const std::string& msg, std::vector<std::string> expected) const {
        throw Error(ErrorCode::ParseError, msg, t.pos, std::move(expected));
    }

    const Token& expect(TokenKind k, std::vector<std::string> expected) {
        if (peek().kind != k) fail_expected(std::move(expected));
        return next();
    }
    void expect_kw(Keyword k, std::vector<std::string> expected) {
        if (!is_kw(k)) fail_expected(std::move(expected));
        next();
    }

    PrefixDecl prefix_decl() {
        next();  // PREFIX
        const Token& name = peek();
        if (name.kind != TokenKind::PName || name.text.back() != ':') {
            fail_expected({"prefix name ending in ':'"});
        }
        next();
        std::string prefix = name.text.substr(0, name.text.size() - 1);
        const Token& iri = expect(TokenKind::IriRef, {describe(TokenKind::IriRef)});
        try {
            table_.define(prefix, Iri(iri.text));
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), name.pos);
        }
        return PrefixDecl{prefix, Iri(iri.text)};
    }

    Projection projection() {
        Projection p;
        if (peek().kind == TokenKind::Star) {
            next();
            p.kind = ProjectionKind::Star;
            return p;
        }
        while (peek().kind == TokenKind::Var) p.vars.push_back(next().text);
        bool paren = peek().kind == TokenKind::LParen && is_kw(Keyword::Count, 1);
        if (paren || is_kw(Keyword::Count)) {
            if (paren) next();
            next();  // COUNT
            expect(TokenKind::LParen, {describe(TokenKind::LParen)});
            if (peek().kind == TokenKind::Star) {
                fail_at(peek(), "COUNT(*) is not supported; count a variable instead", {"variable"});
            }
            std::string counted = expect(TokenKind::Var, {"variable"}).text;
            expect(TokenKind::RParen, {describe(TokenKind::RParen)});
            expect_kw(Keyword::As, {kw(Keyword::As)});
            std::string alias = expect(TokenKind::Var, {"variable"}).text;
            if (paren) expect(TokenKind::RParen, {describe(TokenKind::RParen)});
            p.kind = ProjectionKind::Count;
            p.count = CountAggregate{std::move(counted), std::move(alias)};
            return p;
        }
        if (p.vars.empty()) {
            fail_expected({"variable", describe(TokenKind::Star), kw(Keyword::Count), kw(Keyword::Distinct)},
                          "empty projection");
        }
        if (peek().kind != TokenKind::Var && !is_kw(Keyword::Where)) {
            fail_expected({"variable", kw(Keyword::Count), kw(Keyword::Where)});
        }
        return p;
    }

    OrderKey order_key() {
        OrderKey k;
        if (is_kw(Keyword::Asc) || is_kw(Keyword::Desc)) {
            k.direction = is_kw(Keyword::Desc) ? Direction::Desc : Direction::Asc;
            next();
            expect(TokenKind::LParen, {describe(TokenKind::LParen)});
            k.var = expect(TokenKind::Var, {"variable"}).text;
            expect(TokenKind::RParen, {describe(TokenKind::RParen)});
        } else {
            k.var = expect(TokenKind::Var, {"variable", kw(Keyword::Asc), kw(Keyword::Desc)}).text;
        }
        return k;
    }

    std::int64_t count_value() {
        const Token& t = expect(TokenKind::Integer, {describe(TokenKind::Integer)});
        if (t.literal->as_integer() < 0 || t.text.front() == '+') {
            fail_at(t, "expected a non-negative integer", {"non-negative integer"});
        }
        return t.literal->as_integer();
    }

    // -- group patterns ----------------------------------------------------

    GroupPattern group(GroupMode mode) {
        expect(TokenKind::LBrace, {describe(TokenKind::LBrace)});
        GroupPattern g;
        bool has_triple = false;
        for (;;) {
            const Token& t = peek();
            if (t.kind == TokenKind::RBrace) {
                if (!has_triple) fail_at(t, "group pattern must contain at least one triple pattern", {"triple pattern"});
                next();
                return g;
            }
            if (is_kw(Keyword::Filter) && mode != GroupMode::TriplesOnly) {
                next();
                g.elements.emplace_back(Filter{filter()});
                skip_dot();
            } else if (is_kw(Keyword::Optional) && mode == GroupMode::Full) {
                next();
                GroupPattern body = group(GroupMode::TriplesOnly);
                OptionalPattern opt;
                for (auto& e : body.elements) opt.triples.push_back(std::get<Triple>(std::move(e)));
                g.elements.emplace_back(std::move(opt));
                has_triple = true;
                skip_dot();
            } else if (t.kind == TokenKind::LBrace && mode == GroupMode::Full) {
                UnionPattern u;
                u.branches.push_back(group(GroupMode::TriplesAndFilters));
                expect_kw(Keyword::Union, {kw(Keyword::Union)});
                u.branches.push_back(group(GroupMode::TriplesAndFilters));
                g.elements.emplace_back(std::move(u));
                has_triple = true;
                skip_dot();
            } else if (starts_term(t.kind)) {
                g.elements.emplace_back(triple());
                has_triple = true;
                if (peek().kind == TokenKind::Dot) {
                    next();
                } else if (peek().kind != TokenKind::RBrace && !is_kw(Keyword::Filter) &&
                           !is_kw(Keyword::Optional) && peek().kind != TokenKind::LBrace) {
                    std::string note;
                    if (peek().kind == TokenKind::Semicolon || peek().kind == TokenKind::Comma) {
                        note = "';' and ',' abbreviations are not supported; write full triples";
                    }
                    fail_expected({describe(TokenKind::Dot), describe(TokenKind::RBrace)}, note);
                }
            } else {
                std::vector<std::string> expected{"variable", describe(TokenKind::IriRef),
                                                  describe(TokenKind::PName)};
                if (mode != GroupMode::TriplesOnly) expected.push_back(kw(Keyword::Filter));
                if (mode == GroupMode::Full) {
                    expected.push_back(kw(Keyword::Optional));
                    expected.push_back(describe(TokenKind::LBrace));
                }
                expected.push_back(describe(TokenKind::RBrace));
                fail_expected(expected);
            }
        }
    }

    void skip_dot() {
        if (peek().kind == TokenKind::Dot) next();
    }

    static bool starts_term(TokenKind k) {
        return k == TokenKind::Var || k == TokenKind::IriRef || k == TokenKind::PName || is_literal_token(k);
    }

    Iri resolve(const Token& t) {
        if (t.kind == TokenKind::IriRef) return Iri(t.text);
        try {
            return expand_prefix(t.text, table_);
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), t.pos);
        } catch (const std::invalid_argument& e) {
            throw Error(ErrorCode::ParseError, e.what(), t.pos);
        }
    }

    Term subject_or_predicate(const char* role) {
        const Token& t = peek();
        if (t.kind == TokenKind::Var) {
            next();
            return Var{t.text};
        }
        if (t.kind == TokenKind::IriRef || t.kind == TokenKind::PName) {
            next();
            return resolve(t);
        }
        fail_expected({"variable", describe(TokenKind::IriRef), describe(TokenKind::PName)},
                      std::string("a ") + role + " cannot be a literal");
    }

    Triple triple() {
        Term s = subject_or_predicate("subject");
        Term p = subject_or_predicate("predicate");
        const Token& t = peek();
        Triple out{std::move(s), std::move(p), Var{t.text}};
        if (t.kind == TokenKind::IriRef || t.kind == TokenKind::PName) {
            out.o = resolve(t);
        } else if (is_literal_token(t.kind)) {
            out.o = *t.literal;
        } else if (t.kind != TokenKind::Var) {
            fail_expected({"variable", describe(TokenKind::IriRef), describe(TokenKind::PName), "literal"});
        }
        next();
        return out;
    }

    // -- filters -----------------------------------------------------------

    // Index one past the token that closes the parenthesis at `open`.
    std::size_t matching_paren(std::size_t open) const {
        int depth = 0;
        for (std::size_t i = open; i < tokens_.size(); ++i) {
            if (tokens_[i].kind == TokenKind::LParen) ++depth;
            if (tokens_[i].kind == TokenKind::RParen && --depth == 0) return i + 1;
            if (tokens_[i].kind == TokenKind::End) break;
        }
        const Token& end = tokens_.back();
        throw Error(ErrorCode::ParseError, "unbalanced parentheses in FILTER", end.pos, {describe(TokenKind::RParen)});
    }

    std::string render_range(std::size_t from, std::size_t to) const {
        std::string out;
        for (std::size_t i = from; i < to; ++i) {
            if (i > from) out += ' ';
            out += render_token(tokens_[i]);
        }
        return out;
    }

    FilterExpr filter() {
        if (is_kw(Keyword::Regex)) {
            if (peek(1).kind != TokenKind::LParen) {
                next();
                fail_expected({describe(TokenKind::LParen)});
            }
            std::size_t end = matching_paren(pos_ + 1);
            std::string text = render_range(pos_, end);
            pos_ = end;
            return FilterExpr::make_regex(std::move(text));
        }
        if (peek().kind != TokenKind::LParen) fail_expected({describe(TokenKind::LParen), kw(Keyword::Regex)});
        std::size_t end = matching_paren(pos_);
        for (std::size_t i = pos_; i < end; ++i) {
            if (tokens_[i].kind == TokenKind::Keyword && tokens_[i].keyword == Keyword::Regex) {
                std::string text = render_range(pos_ + 1, end - 1);
                pos_ = end;
                return FilterExpr::make_regex(std::move(text));
            }
        }
        next();  // (
        FilterExpr e = or_expr();
        expect(TokenKind::RParen, {describe(TokenKind::RParen), describe(TokenKind::AndAnd), describe(TokenKind::OrOr)});
        return e;
    }

    FilterExpr or_expr() {
        FilterExpr lhs = and_expr();
        while (peek().kind == TokenKind::OrOr) {
            next();
            lhs = FilterExpr::make_or(std::move(lhs), and_expr());
        }
        return lhs;
    }

    FilterExpr and_expr() {
        FilterExpr lhs = primary();
        while (peek().kind == TokenKind::AndAnd) {
            next();
            lhs = FilterExpr::make_and(std::move(lhs), primary());
        }
        return lhs;
    }

    FilterExpr primary() {
        if (peek().kind == TokenKind::LParen) {
            next();
            FilterExpr e = or_expr();
            expect(TokenKind::RParen, {describe(TokenKind::RParen)});
            return e;
        }
        if (peek().kind != TokenKind::Var) {
            std::string note = is_literal_token(peek().kind) ? "the left side of a comparison must be a variable" : "";
            fail_expected({"variable", describe(TokenKind::LParen)}, note);
        }
        Comparison c{Var{next().text}, CmpOp::Eq, Var{""}};
        auto op = comparison_op(peek().kind);
        if (!op) fail_expected({"comparison operator"});
        next();
        c.op = *op;
        const Token& rhs = peek();
        if (rhs.kind == TokenKind::Var) {
            c.rhs = Var{rhs.text};
        } else if (is_literal_token(rhs.kind)) {
            c.rhs = *rhs.literal;
        } else {
            fail_expected({"variable", "literal"});
        }
        next();
        return FilterExpr::make_cmp(std::move(c));
    }

    // Variables of required patterns (top-level triples and UNION branches),
    // in order of first appearance.
    static std::vector<std::string> star_vars(const GroupPattern& g) {
        std::vector<std::string> out;
        auto add = [&](const Triple& t) {
            for (auto& v : triple_vars(t)) {
                if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
            }
        };
        for (const auto& e : g.elements) {
            if (const auto* t = std::get_if<Triple>(&e)) {
                add(*t);
            } else if (const auto* u = std::get_if<UnionPattern>(&e)) {
                for (const auto& b : u->branches) {
                    for (const auto& be : b.elements) {
                        if (const auto* bt = std::get_if<Triple>(&be)) add(*bt);
                    }
                }
            }
        }
        return out;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    PrefixTable table_;
};

// -- printing ----------------------------------------------------------------

bool is_local_name(std::string_view s) {
    if (s.empty()) return false;
    auto ok = [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (ok(s[i])) continue;
        if (s[i] == '.' && i > 0 && i + 1 < s.size() && ok(s[i + 1])) continue;
        return false;
    }
    return true;
}

std::string print_iri(const Iri& iri) {
    for (auto [prefix, ns] : {std::pair{"v:", kVertexPropertyNs}, std::pair{"e:", kEdgeNs}}) {
        const auto& s = iri.str();
        if (s.size() > ns.size() && s.compare(0, ns.size(), ns) == 0 && is_local_name(s.substr(ns.size()))) {
            return prefix + s.substr(ns.size());
        }
    }
    return "<" + iri.str() + ">";
}

std::string print_literal(const Literal& lit) {
    if (lit.kind() != LiteralKind::String) return lexical_form(lit);
    Token t;
    t.kind = TokenKind::String;
    t.literal = lit;
    return render_token(t);
}

std::string print_term(const Term& term) {
    if (const auto* v = std::get_if<Var>(&term)) return "?" + v->name;
    if (const auto* i = std::get_if<Iri>(&term)) return print_iri(*i);
    return print_literal(std::get<Literal>(term));
}

std::string print_triple(const Triple& t) {
    return print_term(t.s) + " " + print_term(t.p) + " " + print_term(t.o) + " .";
}

std::string op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Neq: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
        case CmpOp::Lte: return "<=";
        case CmpOp::Gte: return ">=";
    }
    return "=";
}

std::string print_expr(const FilterExpr& e) {
    switch (e.kind) {
        case FilterExpr::Kind::Regex: return e.regex_text;
        case FilterExpr::Kind::Cmp: {
            const auto& c = *e.comparison;
            std::string rhs = std::holds_alternative<Var>(c.rhs) ? "?" + std::get<Var>(c.rhs).name
                                                                  : print_literal(std::get<Literal>(c.rhs));
            return "?" + c.lhs.name + " " + op_text(c.op) + " " + rhs;
        }
        case FilterExpr::Kind::And:
        case FilterExpr::Kind::Or: {
            auto side = [](const FilterExpr& x) {
                return x.kind == FilterExpr::Kind::Cmp ? print_expr(x) : "(" + print_expr(x) + ")";
            };
            return side(e.operands[0]) + (e.kind == FilterExpr::Kind::And ? " && " : " || ") + side(e.operands[1]);
        }
    }
    return {};
}

void print_group(std::string& out, const GroupPattern& g, const std::string& indent) {
    for (const auto& e : g.elements) {
        if (const auto* t = std::get_if<Triple>(&e)) {
            out += indent + print_triple(*t) + "\n";
        } else if (const auto* f = std::get_if<Filter>(&e)) {
            out += indent + "FILTER(" + print_expr(f->expr) + ")\n";
        } else if (const auto* o = std::get_if<OptionalPattern>(&e)) {
            out += indent + "OPTIONAL {";
            for (const auto& t2 : o->triples) out += " " + print_triple(t2);
            out += " }\n";
        } else {
            const auto& u = std::get<UnionPattern>(e);
            out += indent + "{\n";
            print_group(out, u.branches[0], indent + "  ");
            out += indent + "} UNION {\n";
            print_group(out, u.branches[1], indent + "  ");
            out += indent + "}\n";
        }
    }
}

}  // namespace

SelectQuery parse(std::string_view text) { return Parser(tokenize(text)).query(); }

std::string to_sparql(const SelectQuery& q) {
    std::string out;
    for (const auto& p : q.prologue) out += "PREFIX " + p.prefix + ": <" + p.ns.str() + ">\n";
    out += "SELECT ";
    if (q.distinct) out += "DISTINCT ";
    if (q.projection.kind == ProjectionKind::Star) {
        out += "*";
    } else {
        for (std::size_t i = 0; i < q.projection.vars.size(); ++i) {
            if (i) out += " ";
            out += "?" + q.projection.vars[i];
        }
        if (q.projection.count) {
            if (!q.projection.vars.empty()) out += " ";
            out += "(COUNT(?" + q.projection.count->counted + ") AS ?" + q.projection.count->alias + ")";
        }
    }
    out += " WHERE {\n";
    print_group(out, q.where, "  ");
    out += "}\n";
    if (!q.group_by.empty()) {
        out += "GROUP BY";
        for (const auto& v : q.group_by) out += " ?" + v;
        out += "\n";
    }
    if (!q.order_by.empty()) {
        out += "ORDER BY";
        for (const auto& k : q.order_by) out += std::string(k.direction == Direction::Desc ? " DESC(?" : " ASC(?") + k.var + ")";
        out += "\n";
    }
    if (q.limit) out += "LIMIT " + std::to_string(*q.limit) + "\n";
    if (q.offset) out += "OFFSET " + std::to_string(*q.offset) + "\n";
    return out;
}

}  // namespace s2g::sparql
