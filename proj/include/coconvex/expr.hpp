#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "coconvex/errors.hpp"
#include "coconvex/polynomial.hpp"

namespace coconvex {

// Expression tree for the piecewise test functions. Grammar (UTF-8 text):
//   number  := decimal literal
//   primary := number | "x" | "(" expr ")" | "abs" "(" expr ")"
//   power   := primary ["^" integer]
//   term    := power (("*"|"/") power)*
//   expr    := ["-"] term (("+"|"-") term)*
// A leading "-" parses as subtraction from the constant 0.
struct Expr {
    enum class Kind { Constant, Var, Add, Sub, Mul, Div, Pow, Abs };

    Kind kind = Kind::Constant;
    double value = 0.0;  // Constant
    int exponent = 0;    // Pow, always >= 0
    std::vector<Expr> kids;

    static Expr constant(double v) {
        Expr e;
        e.kind = Kind::Constant;
        e.value = v;
        return e;
    }
    static Expr var() {
        Expr e;
        e.kind = Kind::Var;
        return e;
    }
    static Expr binary(Kind k, Expr a, Expr b) {
        Expr e;
        e.kind = k;
        e.kids = {std::move(a), std::move(b)};
        return e;
    }
    static Expr pow(Expr base, int n) {
        Expr e;
        e.kind = Kind::Pow;
        e.exponent = n;
        e.kids = {std::move(base)};
        return e;
    }
    static Expr abs(Expr inner) {
        Expr e;
        e.kind = Kind::Abs;
        e.kids = {std::move(inner)};
        return e;
    }
};

inline bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Constant:
            return a.value == b.value;
        case Expr::Kind::Var:
            return true;
        case Expr::Kind::Pow:
            if (a.exponent != b.exponent) return false;
            break;
        default:
            break;
    }
    return a.kids == b.kids;
}

namespace detail {

inline double powi(double v, int n) {
    double acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= v;
    return acc;
}

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("end of input or operator");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) { throw ParseError(pos_, expected); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    bool accept(char c) {
        skip_ws();
        if (!eof() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        skip_ws();
        bool negated = accept('-');
        Expr acc = term();
        if (negated) acc = Expr::binary(Expr::Kind::Sub, Expr::constant(0.0), std::move(acc));
        for (;;) {
            skip_ws();
            if (accept('+'))
                acc = Expr::binary(Expr::Kind::Add, std::move(acc), term());
            else if (accept('-'))
                acc = Expr::binary(Expr::Kind::Sub, std::move(acc), term());
            else
                return acc;
        }
    }

    Expr term() {
        Expr acc = power();
        for (;;) {
            skip_ws();
            if (accept('*'))
                acc = Expr::binary(Expr::Kind::Mul, std::move(acc), power());
            else if (accept('/'))
                acc = Expr::binary(Expr::Kind::Div, std::move(acc), power());
            else
                return acc;
        }
    }

    Expr power() {
        Expr base = primary();
        skip_ws();
        if (accept('^')) return Expr::pow(std::move(base), integer());
        return base;
    }

    Expr primary() {
        skip_ws();
        if (eof()) fail("number, x, '(' or abs");
        char c = peek();
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            if (!accept(')')) fail("')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view name = s_.substr(start, pos_ - start);
            if (name == "x") return Expr::var();
            if (name == "abs") {
                if (!accept('(')) fail("'(' after abs");
                Expr inner = expr();
                if (!accept(')')) fail("')'");
                return Expr::abs(std::move(inner));
            }
            pos_ = start;
            fail("x or abs");
        }
        fail("number, x, '(' or abs");
    }

    Expr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && s_[start] == '.')) {
            pos_ = start;
            fail("number");
        }
        // optional exponent part
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            std::size_t digits = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == digits) pos_ = mark;  // not an exponent after all
        }
        double v = 0.0;
        auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (res.ec != std::errc()) {
            pos_ = start;
            fail("number");
        }
        return Expr::constant(v);
    }

    int integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("nonnegative integer exponent");
        int v = 0;
        auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (res.ec != std::errc()) fail("nonnegative integer exponent");
        return v;
    }
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

inline double eval_expr(const Expr& e, double x) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return e.value;
        case Expr::Kind::Var:
            return x;
        case Expr::Kind::Add:
            return eval_expr(e.kids[0], x) + eval_expr(e.kids[1], x);
        case Expr::Kind::Sub:
            return eval_expr(e.kids[0], x) - eval_expr(e.kids[1], x);
        case Expr::Kind::Mul:
            return eval_expr(e.kids[0], x) * eval_expr(e.kids[1], x);
        case Expr::Kind::Div: {
            double den = eval_expr(e.kids[1], x);
            if (den == 0.0) throw DivisionByZero(x);
            return eval_expr(e.kids[0], x) / den;
        }
        case Expr::Kind::Pow:
            return detail::powi(eval_expr(e.kids[0], x), e.exponent);
        case Expr::Kind::Abs:
            return std::abs(eval_expr(e.kids[0], x));
    }
    throw Error("corrupt expression node");
}

namespace detail {

inline std::string shortest_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

// Canonical printing; print-then-parse returns a structurally identical
// tree (composites are fully parenthesized, negative constants wrapped).
inline std::string to_string(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant: {
            std::string s = detail::shortest_double(e.value);
            if (e.value < 0.0) return "(" + s + ")";
            return s;
        }
        case Expr::Kind::Var:
            return "x";
        case Expr::Kind::Add:
            return "(" + to_string(e.kids[0]) + " + " + to_string(e.kids[1]) + ")";
        case Expr::Kind::Sub:
            return "(" + to_string(e.kids[0]) + " - " + to_string(e.kids[1]) + ")";
        case Expr::Kind::Mul:
            return "(" + to_string(e.kids[0]) + " * " + to_string(e.kids[1]) + ")";
        case Expr::Kind::Div:
            return "(" + to_string(e.kids[0]) + " / " + to_string(e.kids[1]) + ")";
        case Expr::Kind::Pow: {
            const Expr& b = e.kids[0];
            bool bare = b.kind == Expr::Kind::Var ||
                        (b.kind == Expr::Kind::Constant && b.value >= 0.0);
            std::string base = bare ? to_string(b) : "(" + to_string(b) + ")";
            return base + "^" + std::to_string(e.exponent);
        }
        case Expr::Kind::Abs:
            return "abs(" + to_string(e.kids[0]) + ")";
    }
    throw Error("corrupt expression node");
}

// Replace every occurrence of the variable by `replacement`.
inline Expr substitute(const Expr& e, const Expr& replacement) {
    if (e.kind == Expr::Kind::Var) return replacement;
    Expr out = e;
    for (Expr& k : out.kids) k = substitute(k, replacement);
    return out;
}

// Interpret the tree as a polynomial in x. Division is only admitted by a
// nonzero constant; abs() is rejected.
inline Polynomial expr_to_polynomial(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return Polynomial::constant(e.value);
        case Expr::Kind::Var:
            return Polynomial({0.0, 1.0});
        case Expr::Kind::Add:
            return expr_to_polynomial(e.kids[0]) + expr_to_polynomial(e.kids[1]);
        case Expr::Kind::Sub:
            return expr_to_polynomial(e.kids[0]) - expr_to_polynomial(e.kids[1]);
        case Expr::Kind::Mul:
            return expr_to_polynomial(e.kids[0]) * expr_to_polynomial(e.kids[1]);
        case Expr::Kind::Div: {
            Polynomial den = expr_to_polynomial(e.kids[1]);
            if (den.degree() > 0) throw NotAPolynomial("division by a non-constant");
            if (den.is_zero()) throw NotAPolynomial("division by the constant zero");
            return (1.0 / den.coeffs()[0]) * expr_to_polynomial(e.kids[0]);
        }
        case Expr::Kind::Pow: {
            Polynomial base = expr_to_polynomial(e.kids[0]);
            Polynomial acc = Polynomial::constant(1.0);
            for (int i = 0; i < e.exponent; ++i) acc = acc * base;
            return acc;
        }
        case Expr::Kind::Abs:
            throw NotAPolynomial("abs() is not a polynomial");
    }
    throw Error("corrupt expression node");
}

}  // namespace coconvex
