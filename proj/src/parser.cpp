#include "civhs/multipoly.hpp"

#include <cctype>

namespace civhs::exact {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;
    int nvars;

    explicit Parser(const std::string& t, int n) : text(t), nvars(n) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw parse_error("polynomial parse error at position " + std::to_string(pos) + ": " + what);
    }

    mpz_class integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected an integer");
        return mpz_class(text.substr(start, pos - start));
    }

    MultiPoly rational_literal() {
        mpz_class num = integer();
        if (eat('/')) {
            mpz_class den = integer();
            if (den == 0) fail("zero denominator");
            return MultiPoly::constant(rat_from_mpz(num, den), nvars);
        }
        return MultiPoly::constant(Rat(num), nvars);
    }

    MultiPoly base() {
        char c = peek();
        if (c == '(') {
            eat('(');
            MultiPoly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        for (int v = 0; v < 3; ++v) {
            if (c == variable_names()[static_cast<size_t>(v)][0]) {
                if (v >= nvars) fail("variable '" + std::string(1, c) + "' not allowed here");
                ++pos;
                return MultiPoly::variable(v, nvars);
            }
        }
        fail("expected a coefficient, variable, or '('");
    }

    MultiPoly factor() {
        MultiPoly b = base();
        if (eat('^')) {
            mpz_class e = integer();
            if (e < 0 || e > 64) fail("exponent out of range");
            MultiPoly r = MultiPoly::constant(Rat(1), nvars);
            for (long i = 0; i < e.get_si(); ++i) r = r * b;
            return r;
        }
        return b;
    }

    MultiPoly term() {
        MultiPoly t = factor();
        while (eat('*')) t = t * factor();
        return t;
    }

    MultiPoly expr() {
        bool neg = false;
        while (true) {
            if (eat('-')) neg = !neg;
            else if (eat('+')) continue;
            else break;
        }
        MultiPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                eat(c);
                MultiPoly t = term();
                acc = (c == '+') ? acc + t : acc - t;
            } else break;
        }
        return acc;
    }

    MultiPoly run() {
        MultiPoly p = expr();
        skip_ws();
        if (pos != text.size()) fail("trailing input");
        return p;
    }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, int nvars) {
    return Parser(text, nvars).run();
}

}  // namespace civhs::exact
