#pragma once

// Exact arithmetic in multiquadratic fields Q(sqrt(d1), ..., sqrt(dk)).
//
// A Surd is a finite sum  q_1*sqrt(d_1) + ... + q_r*sqrt(d_r)  with rational
// coefficients and pairwise distinct squarefree radicands (radicand 1 is the
// rational part). Square roots of distinct squarefree integers are linearly
// independent over Q, so the canonical term map is zero iff the value is zero
// and equality is structural.

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "equising/errors.hpp"

namespace equising {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Resource caps shared by every engine. Defaults are the documented ones.
struct Limits {
    std::uint64_t max_box = 100'000'000;
    unsigned max_bits = 4096;
    unsigned max_primes = 4;
    std::uint64_t max_denominator = 1'000'000;
};

namespace detail {

inline Integer floor_div(const Integer& n, const Integer& d) {
    Integer q = n / d;
    if (n % d != 0 && ((n < 0) != (d < 0))) --q;
    return q;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw FieldTooLarge("radicand overflow");
    return out;
}

// n = square * core with core squarefree; returns {sqrt(square), core}.
inline std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n) {
    std::uint64_t outside = 1;
    std::uint64_t core = 1;
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) outside *= p;
        if (e % 2 == 1) core *= p;
    }
    core *= n;  // leftover is 1 or a prime
    return {outside, core};
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

inline Integer floor(const Rational& q) {
    return detail::floor_div(boost::multiprecision::numerator(q),
                             boost::multiprecision::denominator(q));
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1)
        os << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

class Surd {
public:
    using Terms = std::map<std::uint64_t, Rational>;

    Surd() = default;
    Surd(const Rational& q) { // NOLINT(google-explicit-constructor)
        if (q != 0) terms_.emplace(1, q);
    }
    Surd(long long q) : Surd(Rational(q)) {} // NOLINT(google-explicit-constructor)
    Surd(int q) : Surd(Rational(q)) {}       // NOLINT(google-explicit-constructor)

    /// coeff * sqrt(n), with square factors of n moved into the coefficient.
    static Surd sqrt(std::uint64_t n, const Rational& coeff = 1) {
        Surd out;
        if (n == 0 || coeff == 0) return out;
        auto [outside, core] = detail::split_square(n);
        out.terms_.emplace(core, coeff * Rational(Integer(outside)));
        return out;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }

    Rational coefficient(std::uint64_t radicand) const {
        auto it = terms_.find(radicand);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational rational_part() const { return coefficient(1); }

    /// Primes dividing some radicand, ascending.
    std::vector<std::uint64_t> prime_support() const {
        std::set<std::uint64_t> primes;
        for (const auto& [d, q] : terms_)
            for (auto p : detail::prime_factors(d)) primes.insert(p);
        return {primes.begin(), primes.end()};
    }

    /// Galois conjugate sending sqrt(p) to -sqrt(p).
    Surd conjugate(std::uint64_t p) const {
        Surd out = *this;
        for (auto& [d, q] : out.terms_)
            if (d % p == 0) q = -q;
        return out;
    }

    Surd operator-() const {
        Surd out = *this;
        for (auto& [d, q] : out.terms_) q = -q;
        return out;
    }

    Surd& operator+=(const Surd& y) {
        for (const auto& [d, q] : y.terms_) accumulate(d, q);
        return *this;
    }
    Surd& operator-=(const Surd& y) { return *this += -y; }

    friend Surd operator+(Surd x, const Surd& y) { return x += y; }
    friend Surd operator-(Surd x, const Surd& y) { return x -= y; }

    friend Surd operator*(const Surd& x, const Surd& y) {
        Surd out;
        for (const auto& [d1, q1] : x.terms_) {
            for (const auto& [d2, q2] : y.terms_) {
                // sqrt(d1)*sqrt(d2) = g*sqrt((d1/g)*(d2/g)) for squarefree d1, d2
                const std::uint64_t g = std::gcd(d1, d2);
                const std::uint64_t d = detail::checked_mul(d1 / g, d2 / g);
                out.accumulate(d, q1 * q2 * Rational(Integer(g)));
            }
        }
        return out;
    }
    Surd& operator*=(const Surd& y) { return *this = *this * y; }

    friend bool operator==(const Surd& x, const Surd& y) = default;

private:
    void accumulate(std::uint64_t d, const Rational& q) {
        if (q == 0) return;
        auto [it, inserted] = terms_.try_emplace(d, q);
        if (!inserted) {
            it->second += q;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Terms terms_;
};

/// Exact inverse via the product of all nontrivial Galois conjugates,
/// accumulated one prime at a time.
inline Surd reciprocal(const Surd& x, const Limits& lim = {}) {
    if (x.is_zero()) throw ZeroDivision();
    const auto primes = x.prime_support();
    if (primes.size() > lim.max_primes)
        throw FieldTooLarge("reciprocal needs " + std::to_string(primes.size()) +
                            " prime radicals, cap is " + std::to_string(lim.max_primes));
    Surd cofactor = 1;
    Surd reduced = x;
    for (auto p : primes) {
        Surd c = reduced.conjugate(p);
        cofactor *= c;
        reduced *= c;
    }
    // reduced is now the rational norm of x.
    return cofactor * Surd(Rational(1) / reduced.rational_part());
}

inline Surd divide(const Surd& x, const Surd& y, const Limits& lim = {}) { return x * reciprocal(y, lim); }

// ---------------------------------------------------------------------------
// Interval refinement

struct RationalInterval {
    Rational lo;
    Rational hi;

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    RationalInterval& operator+=(const RationalInterval& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
};

/// Enclosure of sqrt(d) with dyadic endpoints at `bits` fractional bits.
inline RationalInterval sqrt_enclosure(std::uint64_t d, unsigned bits) {
    const Integer scale = Integer(1) << bits;
    const Integer root = boost::multiprecision::sqrt(Integer(d) * scale * scale);
    if (root * root == Integer(d) * scale * scale) return {Rational(root, scale), Rational(root, scale)};
    return {Rational(root, scale), Rational(root + 1, scale)};
}

inline RationalInterval enclose(const Surd& x, unsigned bits) {
    RationalInterval out{0, 0};
    for (const auto& [d, q] : x.terms()) {
        if (d == 1) {
            out += {q, q};
            continue;
        }
        auto r = sqrt_enclosure(d, bits);
        if (q > 0)
            out += {q * r.lo, q * r.hi};
        else
            out += {q * r.hi, q * r.lo};
    }
    return out;
}

inline int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

/// Exact sign. Zero is decided structurally; otherwise the enclosure is
/// refined with doubling precision until it excludes zero.
inline int sign(const Surd& x, const Limits& lim = {}) {
    if (x.is_zero()) return 0;
    if (x.is_rational()) return sign(x.rational_part());
    for (unsigned bits = 64; bits <= lim.max_bits; bits *= 2) {
        auto iv = enclose(x, bits);
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
    }
    throw PrecisionCap("sign undecided at " + std::to_string(lim.max_bits) + " bits");
}

inline int compare(const Surd& x, const Surd& y, const Limits& lim = {}) { return sign(x - y, lim); }

inline Integer floor_of(const Surd& x, const Limits& lim = {}) {
    if (x.is_rational()) return floor(x.rational_part());
    for (unsigned bits = 64; bits <= lim.max_bits; bits *= 2) {
        auto iv = enclose(x, bits);
        Integer lo = floor(iv.lo);
        if (lo == floor(iv.hi)) return lo;
    }
    throw PrecisionCap("floor undecided at " + std::to_string(lim.max_bits) + " bits");
}

/// Approximate value in a floating type (double, cpp_bin_float_50, ...).
template <class Float>
Float evaluate(const Surd& x) {
    Float out = 0;
    for (const auto& [d, q] : x.terms()) {
        Float c = Float(boost::multiprecision::numerator(q).str()) /
                  Float(boost::multiprecision::denominator(q).str());
        if (d == 1)
            out += c;
        else {
            using std::sqrt;
            out += c * sqrt(Float(d));
        }
    }
    return out;
}

template <>
inline double evaluate<double>(const Surd& x) {
    double out = 0;
    for (const auto& [d, q] : x.terms()) {
        double c = static_cast<double>(q);
        out += d == 1 ? c : c * std::sqrt(static_cast<double>(d));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical text form: rational part first, then radicands ascending.
//   "3", "-1+sqrt(2)", "1/2*sqrt(3)-2/3*sqrt(5)"

inline std::string to_string(const Surd& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, q] : x.terms()) {
        Rational mag = q < 0 ? Rational(-q) : q;
        if (q < 0)
            out += '-';
        else if (!first)
            out += '+';
        first = false;
        if (d == 1) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + "*";
            out += "sqrt(" + std::to_string(d) + ")";
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Surd& x) { return os << to_string(x); }

}  // namespace equising
