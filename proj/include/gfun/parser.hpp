#ifndef GFUN_PARSER_HPP
#define GFUN_PARSER_HPP

#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gfun/ode.hpp"
#include "gfun/polynomial.hpp"

namespace gfun {

// Recursive-descent parser for exact expressions over Q(i) in the variable X,
// with y, y', y'', ... derivative atoms for ODE input. Precedence:
// pow > unary minus > mul/div > add/sub. Decimal literals are rejected:
// rationals are written p/q.
namespace parse_detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Prime, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset = 0;
    std::size_t length = 0;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.')
                throw SyntaxError("decimal literals are not exact; write a rational p/q", i, j - i + 1);
            out.push_back({Tok::Number, src.substr(i, j - i), i, j - i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            out.push_back({Tok::Ident, std::string(1, c), i, 1});
            ++i;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '\'': k = Tok::Prime; break;
            case '=': k = Tok::Equals; break;
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", i, 1);
        }
        out.push_back({k, std::string(1, c), i, 1});
        ++i;
    }
    out.push_back({Tok::End, "", src.size(), 0});
    return out;
}

// Value of a subexpression: a rational function plus a linear combination of
// y-derivative atoms with rational-function coefficients.
struct Value {
    RatFunc scalar;
    std::map<unsigned, RatFunc> yco;

    bool has_y() const { return !yco.empty(); }
};

class Parser {
public:
    Parser(std::string src, bool allow_y)
        : src_(std::move(src)), toks_(lex(src_)), allow_y_(allow_y) {}

    Value parse_expression() {
        Value v = parse_expr();
        expect(Tok::End, "trailing input");
        return v;
    }

    // lhs = rhs (rhs optional); returns lhs - rhs
    Value parse_equation() {
        Value lhs = parse_expr();
        if (peek().kind == Tok::Equals) {
            next();
            Value rhs = parse_expr();
            lhs = sub(lhs, rhs);
        }
        expect(Tok::End, "trailing input");
        return lhs;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    void expect(Tok k, const std::string& what) {
        if (peek().kind != k)
            throw SyntaxError("expected " + what, peek().offset, std::max<std::size_t>(peek().length, 1));
    }

    static Value add(const Value& a, const Value& b) {
        Value r = a;
        r.scalar = r.scalar + b.scalar;
        for (const auto& [k, c] : b.yco) {
            auto it = r.yco.find(k);
            if (it == r.yco.end())
                r.yco[k] = c;
            else
                it->second = it->second + c;
        }
        return r;
    }
    static Value sub(const Value& a, const Value& b) { return add(a, negate(b)); }
    static Value negate(const Value& a) {
        Value r = a;
        r.scalar = -r.scalar;
        for (auto& [k, c] : r.yco) c = -c;
        return r;
    }

    Value mul_values(const Value& a, const Value& b, std::size_t at) {
        if (a.has_y() && b.has_y())
            throw SyntaxError("nonlinear term in y", at, 1);
        const Value& lin = a.has_y() ? a : b;
        const Value& sc = a.has_y() ? b : a;
        Value r;
        r.scalar = lin.scalar * sc.scalar;
        for (const auto& [k, c] : lin.yco) r.yco[k] = c * sc.scalar;
        return r;
    }

    Value parse_expr() {
        Value v = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            Tok op = next().kind;
            Value rhs = parse_term();
            v = (op == Tok::Plus) ? add(v, rhs) : sub(v, rhs);
        }
        return v;
    }

    Value parse_term() {
        Value v = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token& op = next();
            Value rhs = parse_unary();
            if (op.kind == Tok::Star) {
                v = mul_values(v, rhs, op.offset);
            } else {
                if (rhs.has_y()) throw SyntaxError("cannot divide by y", op.offset, 1);
                if (rhs.scalar.is_zero()) throw SyntaxError("division by zero", op.offset, 1);
                Value r;
                r.scalar = v.scalar / rhs.scalar;
                for (const auto& [k, c] : v.yco) r.yco[k] = c / rhs.scalar;
                v = r;
            }
        }
        return v;
    }

    Value parse_unary() {
        if (peek().kind == Tok::Minus) {
            next();
            return negate(parse_unary());
        }
        if (peek().kind == Tok::Plus) {
            next();
            return parse_unary();
        }
        return parse_power();
    }

    Value parse_power() {
        Value base = parse_primary();
        if (peek().kind == Tok::Caret) {
            const Token& op = next();
            bool neg = false;
            if (peek().kind == Tok::Minus) {
                next();
                neg = true;
            }
            expect(Tok::Number, "a nonnegative integer exponent");
            const Token& e = next();
            if (neg)
                throw err::non_polynomial("negative exponent at offset " + std::to_string(op.offset));
            if (base.has_y()) throw SyntaxError("cannot raise y to a power", op.offset, 1);
            unsigned long exp = std::stoul(e.text);
            Value r;
            r.scalar = RatFunc::from_poly(QiPolynomial::constant(GaussianRational(1)));
            for (unsigned long k = 0; k < exp; ++k) r.scalar = r.scalar * base.scalar;
            return r;
        }
        return base;
    }

    Value parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                next();
                Value v;
                v.scalar = RatFunc::from_poly(
                    QiPolynomial::constant(GaussianRational(Rational(t.text))));
                return v;
            }
            case Tok::Ident: {
                next();
                if (t.text == "i") {
                    Value v;
                    v.scalar = RatFunc::from_poly(QiPolynomial::constant(GaussianRational::i_unit()));
                    return v;
                }
                if (t.text == "X" || t.text == "x" || t.text == "z") {
                    Value v;
                    v.scalar = RatFunc::from_poly(QiPolynomial::monomial(1));
                    return v;
                }
                if (t.text == "y") {
                    if (!allow_y_)
                        throw SyntaxError("y is not allowed in a polynomial expression", t.offset, 1);
                    unsigned order = 0;
                    while (peek().kind == Tok::Prime) {
                        next();
                        ++order;
                    }
                    Value v;
                    v.yco[order] = RatFunc::from_poly(QiPolynomial::constant(GaussianRational(1)));
                    return v;
                }
                throw SyntaxError("unknown identifier '" + t.text + "'", t.offset, t.length);
            }
            case Tok::LParen: {
                next();
                Value v = parse_expr();
                expect(Tok::RParen, "')'");
                next();
                return v;
            }
            default:
                throw SyntaxError("expected a number, identifier or '('", t.offset,
                                  std::max<std::size_t>(t.length, 1));
        }
    }

    std::string src_;
    std::vector<Token> toks_;
    bool allow_y_ = false;
    std::size_t pos_ = 0;
};

} // namespace parse_detail

// Parses an exact polynomial over Q(i) in X. Rational-function expressions
// whose denominator involves X are rejected as NonPolynomial.
inline QiPolynomial parse_poly(const std::string& text) {
    parse_detail::Parser p(text, false);
    parse_detail::Value v = p.parse_expression();
    if (v.scalar.den.degree() > 0)
        throw err::non_polynomial("parse_poly: X appears in a denominator");
    GaussianRational inv = GaussianRational(1) / v.scalar.den.coeff(0);
    return inv * v.scalar.num;
}

// Parses a linear ODE in y over Q(i)(X), e.g. "(1+X^2)*y'' + 2*X*y' = 0",
// and normalizes it to monic form.
inline FuchsianODE parse_ode(const std::string& text, unsigned precision_bits = 128) {
    parse_detail::Parser p(text, true);
    parse_detail::Value v = p.parse_equation();
    if (v.yco.empty())
        throw err::schema("parse_ode: no y term present");
    if (!v.scalar.is_zero())
        throw err::schema("parse_ode: inhomogeneous equations are not supported");
    unsigned mu = v.yco.rbegin()->first;
    if (mu == 0) throw err::schema("parse_ode: order zero equation");
    const RatFunc& lead = v.yco.rbegin()->second;
    std::vector<RatFunc> coeffs(mu);
    for (const auto& [k, c] : v.yco) {
        if (k == mu) continue;
        coeffs[k] = c / lead;
    }
    return make_ode(std::move(coeffs), precision_bits);
}

} // namespace gfun

#endif
