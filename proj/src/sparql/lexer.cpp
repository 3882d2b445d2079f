#include "s2g/sparql/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

namespace s2g::sparql {

namespace {

constexpr std::array<std::pair<Keyword, std::string_view>, 17> kKeywords{{
    {Keyword::Select, "SELECT"},   {Keyword::Distinct, "DISTINCT"}, {Keyword::Where, "WHERE"},
    {Keyword::Filter, "FILTER"},   {Keyword::Optional, "OPTIONAL"}, {Keyword::Union, "UNION"},
    {Keyword::Group, "GROUP"},     {Keyword::By, "BY"},             {Keyword::Order, "ORDER"},
    {Keyword::Asc, "ASC"},         {Keyword::Desc, "DESC"},         {Keyword::Limit, "LIMIT"},
    {Keyword::Offset, "OFFSET"},   {Keyword::Count, "COUNT"},       {Keyword::As, "AS"},
    {Keyword::Prefix, "PREFIX"},   {Keyword::Regex, "REGEX"},
}};

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_name_char(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }
bool is_pn_char(char c) { return is_name_char(c) || c == '-'; }

bool iri_char_ok(char c) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20) return false;
    switch (c) {
        case '<': case '>': case '"': case '{': case '}': case '|': case '^': case '`': case '\\':
            return false;
        default:
            return true;
    }
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (at_end()) {
                Token end;
                end.kind = TokenKind::End;
                end.pos = pos_;
                out.push_back(std::move(end));
                return out;
            }
            out.push_back(next());
        }
    }

private:
    bool at_end() const { return pos_.offset >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_.offset + ahead < text_.size() ? text_[pos_.offset + ahead] : '\0';
    }
    void advance() {
        if (text_[pos_.offset] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        ++pos_.offset;
    }

    [[noreturn]] void fail(const std::string& message, SourcePos at) const {
        throw Error(ErrorCode::LexError, message, at);
    }

    void skip_trivia() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token make(TokenKind kind, SourcePos start, std::string text = {}) {
        Token t;
        t.kind = kind;
        t.pos = start;
        t.text = std::move(text);
        return t;
    }

    Token punct(TokenKind kind, std::size_t width) {
        SourcePos start = pos_;
        std::string text(text_.substr(pos_.offset, width));
        for (std::size_t i = 0; i < width; ++i) advance();
        return make(kind, start, std::move(text));
    }

    Token next() {
        SourcePos start = pos_;
        char c = peek();
        switch (c) {
            case '{': return punct(TokenKind::LBrace, 1);
            case '}': return punct(TokenKind::RBrace, 1);
            case '(': return punct(TokenKind::LParen, 1);
            case ')': return punct(TokenKind::RParen, 1);
            case '.': return punct(TokenKind::Dot, 1);
            case ',': return punct(TokenKind::Comma, 1);
            case ';': return punct(TokenKind::Semicolon, 1);
            case '*': return punct(TokenKind::Star, 1);
            case '=': return punct(TokenKind::Eq, 1);
            case '!': return peek(1) == '=' ? punct(TokenKind::Neq, 2) : punct(TokenKind::Bang, 1);
            case '>': return peek(1) == '=' ? punct(TokenKind::Ge, 2) : punct(TokenKind::Gt, 1);
            case '&':
                if (peek(1) == '&') return punct(TokenKind::AndAnd, 2);
                fail("unexpected character '&' (did you mean '&&'?)", start);
            case '|':
                if (peek(1) == '|') return punct(TokenKind::OrOr, 2);
                fail("unexpected character '|' (did you mean '||'?)", start);
            case '<':
                if (peek(1) == '=') return punct(TokenKind::Le, 2);
                if (looks_like_iri()) return iri();
                return punct(TokenKind::Lt, 1);
            case '?': return variable();
            case '"':
            case '\'': return string_literal(c);
            default: break;
        }
        if (is_digit(c) || ((c == '-' || c == '+') && is_digit(peek(1)))) return number();
        if (is_alpha(c) || c == ':') return word();
        auto u = static_cast<unsigned char>(c);
        std::string shown = (u >= 0x20 && u < 0x7f) ? std::string(1, c) : "\\x" + std::to_string(u);
        fail("unexpected character '" + shown + "'", start);
    }

    // '<' starts an IRI when it encloses `scheme:...` with only IRI characters;
    // otherwise it is the less-than operator.
    bool looks_like_iri() const {
        std::size_t i = pos_.offset + 1;
        if (i >= text_.size() || !is_alpha(text_[i])) return false;
        while (i < text_.size() && (is_alpha(text_[i]) || is_digit(text_[i]) || text_[i] == '+' ||
                                    text_[i] == '-' || text_[i] == '.')) {
            ++i;
        }
        if (i >= text_.size() || text_[i] != ':') return false;
        while (i < text_.size() && text_[i] != '>') {
            if (!iri_char_ok(text_[i])) return false;
            ++i;
        }
        return i < text_.size();
    }

    Token iri() {
        SourcePos start = pos_;
        advance();  // <
        std::string value;
        while (peek() != '>') {
            value += peek();
            advance();
        }
        advance();  // >
        return make(TokenKind::IriRef, start, std::move(value));
    }

    Token variable() {
        SourcePos start = pos_;
        advance();  // ?
        if (!(is_alpha(peek()) || peek() == '_')) fail("expected a variable name after '?'", start);
        std::string name;
        while (!at_end() && is_name_char(peek())) {
            name += peek();
            advance();
        }
        return make(TokenKind::Var, start, std::move(name));
    }

    Token string_literal(char quote) {
        SourcePos start = pos_;
        advance();
        std::string value;
        for (;;) {
            if (at_end() || peek() == '\n' || peek() == '\r') fail("unterminated string literal", start);
            char c = peek();
            if (c == quote) {
                advance();
                break;
            }
            if (c == '\\') {
                SourcePos esc = pos_;
                advance();
                if (at_end()) fail("unterminated string literal", start);
                switch (peek()) {
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case 'r': value += '\r'; break;
                    case '"': value += '"'; break;
                    case '\'': value += '\''; break;
                    case '\\': value += '\\'; break;
                    default: fail("unknown escape sequence in string literal", esc);
                }
                advance();
                continue;
            }
            value += c;
            advance();
        }
        Token t = make(TokenKind::String, start, value);
        t.literal = Literal::string(std::move(value));
        return t;
    }

    Token number() {
        SourcePos start = pos_;
        std::string text;
        if (peek() == '-' || peek() == '+') {
            text += peek();
            advance();
        }
        bool is_double = false;
        while (is_digit(peek())) {
            text += peek();
            advance();
        }
        if (peek() == '.' && is_digit(peek(1))) {
            is_double = true;
            text += '.';
            advance();
            while (is_digit(peek())) {
                text += peek();
                advance();
            }
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
            is_double = true;
            text += peek();
            advance();
            if (peek() == '+' || peek() == '-') {
                text += peek();
                advance();
            }
            while (is_digit(peek())) {
                text += peek();
                advance();
            }
        }
        if (is_alpha(peek()) || peek() == '_') fail("malformed number", start);

        std::string_view digits = text;
        if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
        Token t = make(is_double ? TokenKind::Double : TokenKind::Integer, start, text);
        if (is_double) {
            double d = 0;
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
            if (ec != std::errc() || p != digits.data() + digits.size() || !std::isfinite(d)) {
                fail("numeric literal out of range", start);
            }
            t.literal = Literal::real(d);
        } else {
            std::int64_t i = 0;
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), i);
            if (ec != std::errc() || p != digits.data() + digits.size()) fail("integer literal out of range", start);
            t.literal = Literal::integer(i);
        }
        return t;
    }

    Token word() {
        SourcePos start = pos_;
        std::string prefix;
        while (!at_end() && is_pn_char(peek())) {
            prefix += peek();
            advance();
        }
        if (peek() == ':') {
            advance();
            std::string local;
            // Local part: name chars, with interior '.' allowed but never trailing.
            while (!at_end()) {
                char c = peek();
                if (is_pn_char(c)) {
                    local += c;
                    advance();
                } else if (c == '.' && !local.empty() && is_pn_char(peek(1))) {
                    local += c;
                    advance();
                } else {
                    break;
                }
            }
            return make(TokenKind::PName, start, prefix + ":" + local);
        }
        if (prefix == "true" || prefix == "false") {
            Token t = make(TokenKind::Boolean, start, prefix);
            t.literal = Literal::boolean(prefix == "true");
            return t;
        }
        std::string up = upper(prefix);
        for (const auto& [kw, text] : kKeywords) {
            if (up == text) {
                Token t = make(TokenKind::Keyword, start, std::string(text));
                t.keyword = kw;
                return t;
            }
        }
        fail("unknown word '" + prefix + "'", start);
    }

    std::string_view text_;
    SourcePos pos_;
};

std::string escape_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

}  // namespace

std::string_view keyword_text(Keyword kw) {
    for (const auto& [k, text] : kKeywords) {
        if (k == kw) return text;
    }
    return "?";
}

std::string render_token(const Token& token) {
    switch (token.kind) {
        case TokenKind::Keyword: return std::string(keyword_text(token.keyword));
        case TokenKind::Var: return "?" + token.text;
        case TokenKind::PName: return token.text;
        case TokenKind::IriRef: return "<" + token.text + ">";
        case TokenKind::String: return escape_string(token.literal->as_string());
        case TokenKind::Integer:
        case TokenKind::Double:
        case TokenKind::Boolean: return lexical_form(*token.literal);
        case TokenKind::End: return "";
        default: return token.text;
    }
}

std::string describe(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Var: return "variable";
        case TokenKind::PName: return "prefixed name";
        case TokenKind::IriRef: return "IRI";
        case TokenKind::String: return "string";
        case TokenKind::Integer: return "integer";
        case TokenKind::Double: return "double";
        case TokenKind::Boolean: return "boolean";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Dot: return "'.'";
        case TokenKind::Comma: return "','";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Bang: return "'!'";
        case TokenKind::AndAnd: return "'&&'";
        case TokenKind::OrOr: return "'||'";
        case TokenKind::Eq: return "'='";
        case TokenKind::Neq: return "'!='";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Le: return "'<='";
        case TokenKind::Ge: return "'>='";
        case TokenKind::End: return "end of input";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace s2g::sparql
