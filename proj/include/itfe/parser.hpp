#pragma once

// Expressions in t over Q:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | unary starting with 't' or '(')*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-' | '+'] digits)?
//   primary := digits | 't' | '(' expr ')'
//
// '^' binds tighter than unary minus: -t^2 is -(t^2). "3t" and "(1+t)(1-t)"
// are products; "p/q" literals are just division.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "rational_function.hpp"

namespace itfe {

using SyntaxError = ParseError;

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : s_(src) {}

    RationalFunction parse() {
        skip();
        if (pos_ == s_.size()) throw ParseError(pos_, "an expression");
        RationalFunction v = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(pos_, "an operator or end of input");
        return v;
    }

private:
    static constexpr long kMaxExponent = 4096;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RationalFunction expr() {
        RationalFunction v = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            RationalFunction rhs = term();
            v = c == '+' ? v + rhs : v - rhs;
        }
        return v;
    }

    RationalFunction term() {
        RationalFunction v = unary();
        for (;;) {
            const char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                RationalFunction rhs = unary();
                v = c == '*' ? v * rhs : v / rhs;
            } else if (c == 't' || c == '(') {
                v = v * unary();
            } else {
                return v;
            }
        }
    }

    RationalFunction unary() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    RationalFunction power() {
        RationalFunction base = primary();
        if (peek() != '^') return base;
        ++pos_;
        skip();
        const std::size_t at = pos_;
        bool negative = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            negative = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) throw NonIntegerExponent(at);
        const BigInt e = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') throw NonIntegerExponent(at);
        if (e > kMaxExponent) throw ParseError(at, "an exponent of absolute value <= " + std::to_string(kMaxExponent));
        if (peek() == '^') throw ParseError(pos_, "parentheses around a repeated exponent");
        const long ev = e.get_si();
        return pow(base, negative ? -ev : ev);
    }

    RationalFunction primary() {
        const char c = peek();
        if (c == 't') {
            ++pos_;
            return RationalFunction::t();
        }
        if (c == '(') {
            ++pos_;
            RationalFunction v = expr();
            if (peek() != ')') throw ParseError(pos_, "')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt n = digits();
            if (pos_ < s_.size() && s_[pos_] == '.') throw ParseError(pos_, "an integer literal (no decimals)");
            return RationalFunction(Rational(n));
        }
        throw ParseError(pos_, "a number, 't' or '('");
    }

    BigInt digits() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return BigInt(std::string(s_.substr(start, pos_ - start)), 10);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a rational function of t; the result is reduced.
inline RationalFunction parse_expression(std::string_view src) { return detail::ExprParser(src).parse(); }

} // namespace itfe
