#pragma once

// Monomial structure of the multiplier ideals I(t*phi) for the toric weight
// phi = log max_i |z_i|^{a_i}.  A monomial z^alpha lies in I(t*phi) iff
//
//     sum_i (alpha_i + 1) / a_i  >  t,
//
// so the non-members form a finite down-closed set of exponents (the
// staircase) and its complement is generated by finitely many monomials.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "equising/numbers.hpp"

namespace equising {

/// Exponents (a_1, ..., a_m) of phi, ambient dimension n >= m and the
/// polydisc radius used for the trailing coordinates z_{m+1..n}.
struct WeightSpec {
    std::vector<Surd> a;
    std::size_t n = 0;
    Rational trailing_radius{1, 2};

    std::size_t m() const { return a.size(); }

    /// Validated construction; n == 0 means n = m.
    static WeightSpec make(std::vector<Surd> a, std::size_t n = 0, Rational rho = Rational(1, 2),
                           const Limits& lim = {}) {
        if (a.empty()) throw NonPositiveWeight("a weight needs at least one exponent");
        for (const auto& ai : a)
            if (sign(ai, lim) <= 0) throw NonPositiveWeight("exponent " + to_string(ai) + " is not positive");
        if (n == 0) n = a.size();
        if (n < a.size()) throw precondition_error("ambient dimension n is smaller than m");
        if (rho <= 0) throw precondition_error("trailing radius must be positive");
        return WeightSpec{std::move(a), n, rho};
    }

    bool all_rational() const {
        return std::all_of(a.begin(), a.end(), [](const Surd& x) { return x.is_rational(); });
    }
};

struct Exponent {
    std::vector<std::int64_t> powers;

    Exponent() = default;
    explicit Exponent(std::vector<std::int64_t> p) : powers(std::move(p)) {}
    Exponent(std::initializer_list<std::int64_t> p) : powers(p) {}

    std::size_t size() const { return powers.size(); }
    std::int64_t operator[](std::size_t i) const { return powers[i]; }

    /// Componentwise >=.
    bool dominates(const Exponent& o) const {
        for (std::size_t i = 0; i < powers.size(); ++i)
            if (powers[i] < o.powers[i]) return false;
        return true;
    }

    friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

struct Staircase {
    Surd scale;
    std::vector<Exponent> nonmembers;  // sorted
    std::vector<Exponent> generators;  // sorted, pairwise incomparable
};

inline std::vector<Surd> inverse_weights(const WeightSpec& w, const Limits& lim = {}) {
    std::vector<Surd> out;
    out.reserve(w.m());
    for (const auto& ai : w.a) out.push_back(reciprocal(ai, lim));
    return out;
}

/// sum_i (alpha_i + 1) / a_i, given the reciprocals 1/a_i.
inline Surd exponent_sum(const Exponent& alpha, const std::vector<Surd>& inv) {
    Surd s;
    for (std::size_t i = 0; i < inv.size(); ++i) s += Surd(Rational(alpha[i] + 1)) * inv[i];
    return s;
}

inline bool contains(const Exponent& alpha, const WeightSpec& w, const Surd& t, const Limits& lim = {}) {
    if (alpha.size() != w.m()) throw precondition_error("exponent length differs from m");
    return sign(exponent_sum(alpha, inverse_weights(w, lim)) - t, lim) > 0;
}

/// Log canonical threshold sum_i 1/a_i.
inline Surd lct(const WeightSpec& w, const Limits& lim = {}) {
    Surd s;
    for (const auto& inv : inverse_weights(w, lim)) s += inv;
    return s;
}

namespace detail {

inline void check_box(const WeightSpec& w, const Surd& t, const Limits& lim) {
    Integer volume = 1;
    for (const auto& ai : w.a) {
        Integer side = floor_of(t * ai, lim);
        if (side <= 0) return;  // empty box
        volume *= side;
        if (volume > lim.max_box)
            throw BoxTooLarge("candidate box exceeds " + std::to_string(lim.max_box) + " points");
    }
}

inline void collect_nonmembers(std::size_t i, Exponent& alpha, const Surd& partial, const Surd& tail_min,
                               const std::vector<Surd>& inv, const Surd& t, const Limits& lim,
                               std::vector<Exponent>& out) {
    if (i == inv.size()) {
        out.push_back(alpha);
        return;
    }
    const Surd rest = tail_min - inv[i];  // remaining coordinates at alpha_j = 0
    for (std::int64_t k = 0;; ++k) {
        Surd here = partial + Surd(Rational(k + 1)) * inv[i];
        if (sign(here + rest - t, lim) > 0) break;
        alpha.powers[i] = k;
        collect_nonmembers(i + 1, alpha, here, rest, inv, t, lim, out);
    }
    alpha.powers[i] = 0;
}

}  // namespace detail

/// All exponents alpha with sum_i (alpha_i+1)/a_i <= t, in lexicographic order.
inline std::vector<Exponent> nonmember_set(const WeightSpec& w, const Surd& t, const Limits& lim = {}) {
    if (sign(t, lim) <= 0) throw precondition_error("scale t must be positive");
    detail::check_box(w, t, lim);
    const auto inv = inverse_weights(w, lim);
    Surd all;
    for (const auto& x : inv) all += x;
    std::vector<Exponent> out;
    Exponent alpha(std::vector<std::int64_t>(w.m(), 0));
    detail::collect_nonmembers(0, alpha, Surd{}, all, inv, t, lim, out);
    return out;
}

/// Minimal generators of the complement of a down-closed finite set.
inline std::vector<Exponent> minimal_generators(const std::vector<Exponent>& down_set, std::size_t m) {
    if (down_set.empty()) return {Exponent(std::vector<std::int64_t>(m, 0))};
    auto in_set = [&](const Exponent& e) { return std::binary_search(down_set.begin(), down_set.end(), e); };
    std::vector<Exponent> out;
    for (const auto& nu : down_set) {
        for (std::size_t i = 0; i < m; ++i) {
            Exponent g = nu;
            ++g.powers[i];
            if (in_set(g)) continue;
            bool minimal = true;
            for (std::size_t j = 0; j < m && minimal; ++j) {
                if (g[j] == 0) continue;
                Exponent below = g;
                --below.powers[j];
                minimal = in_set(below);
            }
            if (minimal) out.push_back(std::move(g));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Staircase nonmembers(const WeightSpec& w, const Surd& t, const Limits& lim = {}) {
    Staircase s{t, nonmember_set(w, t, lim), {}};
    s.generators = minimal_generators(s.nonmembers, w.m());
    return s;
}

inline std::vector<Exponent> generators(const WeightSpec& w, const Surd& t, const Limits& lim = {}) {
    return minimal_generators(nonmember_set(w, t, lim), w.m());
}

/// I(t1*phi) == I(t2*phi); comparing monomials suffices for these weights.
inline bool ideal_equal(const WeightSpec& w, const Surd& t1, const Surd& t2, const Limits& lim = {}) {
    if (t1 == t2) return true;
    return nonmember_set(w, t1, lim) == nonmember_set(w, t2, lim);
}

/// Jump structure of I(t*phi) just below t = 1.
struct Margin {
    std::optional<Surd> epsilon0;          // absent when some non-member sits exactly on the boundary
    std::optional<Surd> top;               // s*, the largest sub-threshold exponent sum
    std::optional<Surd> next_below;        // largest exponent sum strictly below s*
    std::optional<Exponent> boundary;      // a non-member with exponent sum exactly 1
};

inline Margin margin(const WeightSpec& w, const Limits& lim = {}) {
    const auto inv = inverse_weights(w, lim);
    const auto below = nonmember_set(w, Surd(1), lim);
    Margin out;
    std::vector<Surd> sums;
    for (const auto& alpha : below) {
        Surd s = exponent_sum(alpha, inv);
        if (s == Surd(1)) {
            out.boundary = alpha;
            return out;
        }
        sums.push_back(std::move(s));
    }
    for (const auto& s : sums)
        if (!out.top || compare(s, *out.top, lim) > 0) out.top = s;
    if (!out.top) {
        out.epsilon0 = Surd(1);
        if (!ideal_equal(w, 1, Rational(1, 2), lim)) throw CertificateMismatch("epsilon0 post-check failed");
        return out;
    }
    for (const auto& s : sums)
        if (compare(s, *out.top, lim) < 0 && (!out.next_below || compare(s, *out.next_below, lim) > 0))
            out.next_below = s;
    out.epsilon0 = Surd(1) - *out.top;
    if (!ideal_equal(w, 1, *out.top, lim)) throw CertificateMismatch("epsilon0 post-check failed");
    return out;
}

inline std::optional<Surd> epsilon0(const WeightSpec& w, const Limits& lim = {}) { return margin(w, lim).epsilon0; }

}  // namespace equising
