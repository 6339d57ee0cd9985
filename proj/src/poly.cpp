#include "artin/poly.hpp"

#include <cctype>
#include <limits>

namespace artin {

Monomial Monomial::var(std::size_t nvars, std::size_t i, std::uint32_t e) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    Monomial m = one(nvars);
    m.exps[i] = e;
    return m;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (std::uint32_t e : exps) d += e;
    return d;
}

Monomial Monomial::times(const Monomial& o) const {
    if (exps.size() != o.exps.size())
        throw std::invalid_argument("variable count mismatch in Monomial::times");
    Monomial m{exps};
    for (std::size_t i = 0; i < exps.size(); ++i) {
        std::uint64_t s = std::uint64_t(m.exps[i]) + o.exps[i];
        if (s > std::numeric_limits<std::uint32_t>::max())
            throw std::overflow_error("monomial exponent overflow");
        m.exps[i] = std::uint32_t(s);
    }
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    if (exps.size() != o.exps.size())
        throw std::invalid_argument("variable count mismatch in Monomial::divides");
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] > o.exps[i]) return false;
    return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
    if (!o.divides(*this)) throw std::invalid_argument("monomial division is not exact");
    Monomial m{exps};
    for (std::size_t i = 0; i < exps.size(); ++i) m.exps[i] -= o.exps[i];
    return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    if (a.exps.size() != b.exps.size())
        throw std::invalid_argument("variable count mismatch in Monomial::lcm");
    Monomial m{a.exps};
    for (std::size_t i = 0; i < m.exps.size(); ++i)
        if (b.exps[i] > m.exps[i]) m.exps[i] = b.exps[i];
    return m;
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
    if (a.exps.size() != b.exps.size())
        throw std::invalid_argument("variable count mismatch in grevlex comparison");
    std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = a.exps.size(); i-- > 0;) {
        if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
    }
    return false;
}

Poly Poly::constant(FieldConfig field, std::size_t nvars, Scalar c) {
    Poly f(field, nvars);
    f.add_term(Monomial::one(nvars), c);
    return f;
}

Poly Poly::variable(FieldConfig field, std::size_t nvars, std::size_t i) {
    Poly f(field, nvars);
    f.add_term(Monomial::var(nvars, i), 1);
    return f;
}

Poly Poly::term(FieldConfig field, std::size_t nvars, Monomial m, Scalar c) {
    Poly f(field, nvars);
    f.add_term(m, c);
    return f;
}

std::uint64_t Poly::degree() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->first.degree();
}

std::pair<Monomial, Scalar> Poly::leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
    return *terms_.rbegin();
}

Scalar Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void Poly::add_term(const Monomial& m, Scalar c) {
    if (m.nvars() != nvars_)
        throw std::invalid_argument("variable count mismatch in Poly::add_term");
    c = field_.reduce(static_cast<std::int64_t>(c));
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second = field_.add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly::check_compatible(const Poly& o) const {
    if (nvars_ != o.nvars_ || field_ != o.field_)
        throw std::invalid_argument("polynomials live in different rings");
}

Poly Poly::operator+(const Poly& o) const {
    check_compatible(o);
    Poly f = *this;
    for (const auto& [m, c] : o.terms_) f.add_term(m, c);
    return f;
}

Poly Poly::operator-(const Poly& o) const {
    check_compatible(o);
    Poly f = *this;
    for (const auto& [m, c] : o.terms_) f.add_term(m, field_.neg(c));
    return f;
}

Poly Poly::operator-() const {
    Poly f(field_, nvars_);
    for (const auto& [m, c] : terms_) f.add_term(m, field_.neg(c));
    return f;
}

Poly Poly::operator*(const Poly& o) const {
    check_compatible(o);
    Poly f(field_, nvars_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) f.add_term(m1.times(m2), field_.mul(c1, c2));
    return f;
}

Poly Poly::scaled(Scalar c) const {
    Poly f(field_, nvars_);
    for (const auto& [m, a] : terms_) f.add_term(m, field_.mul(a, c));
    return f;
}

Poly Poly::times_term(const Monomial& m, Scalar c) const {
    Poly f(field_, nvars_);
    for (const auto& [m1, c1] : terms_) f.add_term(m1.times(m), field_.mul(c1, c));
    return f;
}

Poly Poly::pow(std::uint64_t e) const {
    Poly acc = Poly::constant(field_, nvars_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0, line = 1, col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '\n') {
                ++line;
                col = 1;
                ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else {
                break;
            }
        }
    }
    void advance() {
        ++pos;
        ++col;
    }
    bool eof() {
        skip_space();
        return pos >= text.size();
    }
    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

    std::uint64_t number() {
        skip_space();
        std::uint64_t v = 0;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::uint64_t digit = std::uint64_t(text[pos] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
                fail("integer literal too large");
            v = v * 10 + digit;
            advance();
        }
        if (pos == start) fail("expected a number");
        return v;
    }
    std::string ident() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '\''))
            advance();
        if (pos == start) fail("expected an identifier");
        return text.substr(start, pos - start);
    }
};

struct Parser {
    Lexer lex;
    FieldConfig field;
    const std::vector<std::string>& vars;

    Parser(FieldConfig f, const std::vector<std::string>& v, const std::string& text)
        : lex(text), field(f), vars(v) {}

    std::size_t var_index(const std::string& name, std::size_t line, std::size_t col) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        throw ParseError("unknown variable '" + name + "'", line, col);
    }

    Poly atom() {
        char c = lex.peek();
        if (c == '(') {
            lex.advance();
            Poly f = expr();
            if (lex.peek() != ')') lex.fail("expected ')'");
            lex.advance();
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = lex.number();
            return Poly::constant(field, vars.size(), field.reduce(std::int64_t(v % field.p())));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t l = lex.line, co = lex.col;
            std::string name = lex.ident();
            return Poly::variable(field, vars.size(), var_index(name, l, co));
        }
        lex.fail(c == '\0' ? "unexpected end of expression" : std::string("unexpected character '") + c + "'");
    }

    Poly factor() {
        Poly f = atom();
        if (lex.peek() == '^') {
            lex.advance();
            std::uint64_t e = lex.number();
            if (e > (1u << 20)) lex.fail("exponent too large");
            f = f.pow(e);
        }
        return f;
    }

    Poly term() {
        Poly f = factor();
        while (lex.peek() == '*') {
            lex.advance();
            f = f * factor();
        }
        return f;
    }

    Poly expr() {
        bool neg = false;
        if (lex.peek() == '-') {
            lex.advance();
            neg = true;
        }
        Poly f = term();
        if (neg) f = -f;
        while (true) {
            char c = lex.peek();
            if (c == '+') {
                lex.advance();
                f = f + term();
            } else if (c == '-') {
                lex.advance();
                f = f - term();
            } else {
                break;
            }
        }
        return f;
    }

    Poly parse() {
        Poly f = expr();
        if (!lex.eof()) lex.fail("trailing input after expression");
        return f;
    }
};

} // namespace

Poly parse_poly(FieldConfig field, const std::vector<std::string>& vars, const std::string& text) {
    return Parser(field, vars, text).parse();
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars) {
    if (m.nvars() != vars.size())
        throw std::invalid_argument("variable count mismatch in monomial_to_string");
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[i];
        if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
    }
    return out.empty() ? "1" : out;
}

std::string poly_to_string(const Poly& f, const std::vector<std::string>& vars) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        if (!out.empty()) out += " + ";
        if (m.is_one()) {
            out += std::to_string(c);
        } else if (c == 1) {
            out += monomial_to_string(m, vars);
        } else {
            out += std::to_string(c) + "*" + monomial_to_string(m, vars);
        }
    }
    return out;
}

} // namespace artin
