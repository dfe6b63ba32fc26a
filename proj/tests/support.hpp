#pragma once

// Random generators and brute-force oracles shared by the test binaries.
// Oracles here deliberately avoid the engine's pruned search paths.

#include <random>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "equising/equising.hpp"

namespace equising::oracles {

using Dec50 = boost::multiprecision::cpp_dec_float_50;

inline Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng), den(rng));
}

/// Random element of Q(sqrt(2), sqrt(3), sqrt(5)) (at most `primes` radicals).
inline Surd random_surd(std::mt19937_64& rng, unsigned primes = 3, int max_num = 9, int max_den = 6) {
    static const std::uint64_t base[] = {2, 3, 5, 7};
    std::vector<std::uint64_t> radicands{1};
    for (unsigned p = 0; p < primes; ++p) {
        const auto n = radicands.size();
        for (std::size_t i = 0; i < n; ++i) radicands.push_back(radicands[i] * base[p]);
    }
    std::bernoulli_distribution keep(0.5);
    Surd x;
    for (auto d : radicands)
        if (keep(rng)) x += Surd::sqrt(d, random_rational(rng, max_num, max_den));
    return x;
}

inline Surd random_nonzero_surd(std::mt19937_64& rng, unsigned primes = 3) {
    for (;;) {
        Surd x = random_surd(rng, primes);
        if (!x.is_zero()) return x;
    }
}

/// 50-digit decimal evaluation, independent of the interval refinement code.
inline Dec50 dec50(const Surd& x) {
    Dec50 out = 0;
    for (const auto& [d, q] : x.terms())
        out += Dec50(boost::multiprecision::numerator(q).str()) / Dec50(boost::multiprecision::denominator(q).str()) *
               boost::multiprecision::sqrt(Dec50(d));
    return out;
}

/// Positive exponent a with a <= max: rational, q*sqrt(d), or p + q*sqrt(d).
inline Surd random_exponent(std::mt19937_64& rng, int max_value = 6) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> pick(0, 2);
    static const std::uint64_t rads[] = {2, 3, 5};
    for (;;) {
        Surd a;
        switch (kind(rng)) {
            case 0: a = Surd(random_rational(rng, 12, 4)); break;
            case 1: a = Surd::sqrt(rads[pick(rng)], random_rational(rng, 8, 3)); break;
            default:
                a = Surd(random_rational(rng, 6, 2)) + Surd::sqrt(rads[pick(rng)], random_rational(rng, 4, 3));
        }
        if (sign(a) > 0 && compare(a, Surd(max_value)) <= 0 && compare(a, Surd(Rational(1, 4))) >= 0) return a;
    }
}

inline WeightSpec random_weight(std::mt19937_64& rng, std::size_t max_m = 3, int max_value = 6) {
    std::uniform_int_distribution<std::size_t> mdist(1, max_m);
    std::vector<Surd> a;
    const auto m = mdist(rng);
    for (std::size_t i = 0; i < m; ++i) a.push_back(random_exponent(rng, max_value));
    return WeightSpec::make(std::move(a));
}

/// Unpruned sweep of 1 <= x_i <= floor(a_i) for sum x_i / a_i = 1.
inline std::vector<PositiveVector> brute_unit_solutions(const WeightSpec& w) {
    std::vector<PositiveVector> out;
    std::vector<std::int64_t> box;
    for (const auto& ai : w.a) box.push_back(static_cast<std::int64_t>(floor_of(ai)));
    for (auto b : box)
        if (b < 1) return out;
    std::vector<Surd> inv;
    for (const auto& ai : w.a) inv.push_back(reciprocal(ai));
    PositiveVector x(w.m(), 1);
    for (;;) {
        Surd s;
        for (std::size_t i = 0; i < w.m(); ++i) s += Surd(Rational(x[i])) * inv[i];
        if (s == Surd(1)) out.push_back(x);
        std::size_t i = w.m();
        // lexicographic increment, last coordinate fastest
        while (i > 0) {
            --i;
            if (++x[i] <= box[i]) break;
            x[i] = 1;
            if (i == 0) return out;
        }
    }
}

/// All alpha in the box alpha_i < floor(t a_i) (+1 slack) with the sum test done
/// in 50-digit decimals; valid when no sum lies within 1e-40 of t.
inline std::vector<Exponent> brute_nonmembers(const WeightSpec& w, const Surd& t) {
    std::vector<std::int64_t> box;
    for (const auto& ai : w.a) box.push_back(static_cast<std::int64_t>(floor_of(t * ai)) + 1);
    std::vector<Exponent> out;
    const Dec50 tv = dec50(t);
    std::vector<Dec50> av;
    for (const auto& ai : w.a) av.push_back(dec50(ai));
    Exponent alpha(std::vector<std::int64_t>(w.m(), 0));
    for (;;) {
        Dec50 s = 0;
        for (std::size_t i = 0; i < w.m(); ++i) s += Dec50(alpha[i] + 1) / av[i];
        if (s <= tv + Dec50("1e-40")) out.push_back(alpha);
        std::size_t i = w.m();
        bool done = false;
        while (i > 0) {
            --i;
            if (++alpha.powers[i] <= box[i]) break;
            alpha.powers[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace equising::oracles
