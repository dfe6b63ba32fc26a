#pragma once

// Weight expression grammar:
//   weight   := ['-'] term (('+'|'-') term)*
//   term     := rational | rational '*' 'sqrt' '(' posint ')' | 'sqrt' '(' posint ')'
//   rational := int | int '/' posint
// Whitespace between tokens is ignored.

#include <cctype>
#include <limits>
#include <string>
#include <string_view>

#include "equising/numbers.hpp"

namespace equising {

namespace detail {

class WeightParser {
public:
    explicit WeightParser(std::string_view text) : text_(text) {}

    Surd parse() {
        skip_ws();
        if (at_end()) throw ParseError("empty weight expression", pos_);
        Surd out;
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = peek() == '-';
            ++pos_;
        }
        for (;;) {
            Surd t = term();
            out += negative ? -t : t;
            skip_ws();
            if (at_end()) break;
            char c = peek();
            if (c != '+' && c != '-') throw ParseError(std::string("unexpected '") + c + "'", pos_);
            negative = c == '-';
            ++pos_;
        }
        return out;
    }

private:
    Surd term() {
        skip_ws();
        if (starts_with("sqrt")) return radical(1);
        Rational q = rational();
        skip_ws();
        if (!at_end() && peek() == '*') {
            ++pos_;
            skip_ws();
            if (!starts_with("sqrt")) throw ParseError("expected 'sqrt'", pos_);
            return radical(q);
        }
        return Surd(q);
    }

    Surd radical(const Rational& coeff) {
        pos_ += 4;
        skip_ws();
        expect('(');
        skip_ws();
        const std::size_t at = pos_;
        Integer n = digits();
        if (n == 0) throw ParseError("radicand must be positive", at);
        if (n > Integer(std::numeric_limits<std::uint64_t>::max()))
            throw ParseError("radicand too large", at);
        skip_ws();
        expect(')');
        return Surd::sqrt(static_cast<std::uint64_t>(n), coeff);
    }

    Rational rational() {
        Integer num = digits();
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            Integer den = digits();
            if (den == 0) throw ParseError("zero denominator", at);
            return Rational(num, den);
        }
        return Rational(num);
    }

    Integer digits() {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected digits", pos_);
        Integer v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            ++pos_;
        }
        return v;
    }

    void expect(char c) {
        if (at_end() || peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
    bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Surd parse_surd(std::string_view text) { return detail::WeightParser(text).parse(); }

/// Parse an exponent a_i; it must be strictly positive.
inline Surd parse_weight(std::string_view text, const Limits& lim = {}) {
    Surd x = parse_surd(text);
    if (sign(x, lim) <= 0) throw NonPositiveWeight("weight '" + std::string(text) + "' is not positive");
    return x;
}

}  // namespace equising
