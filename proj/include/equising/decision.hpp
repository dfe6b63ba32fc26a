#pragma once

// Decides whether phi = log sum_i |z_i|^{a_i} admits decreasing equisingular
// approximations with analytic singularities. That happens iff
//   (1) all a_i share a common scale c with a_i / c rational, or
//   (2) sum_i x_i / a_i = 1 has no solution in positive integers.
// Every verdict carries a certificate that can be re-checked with exact
// arithmetic and without repeating the pruned search.

#include <optional>
#include <variant>
#include <vector>

#include "equising/staircase.hpp"

namespace equising {

enum class Outcome { ApproximableAnalytic, ApproximableDiophantine, NotApproximable };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::ApproximableAnalytic: return "ApproximableAnalytic";
        case Outcome::ApproximableDiophantine: return "ApproximableDiophantine";
        case Outcome::NotApproximable: return "NotApproximable";
    }
    return "?";
}

using PositiveVector = std::vector<std::int64_t>;

/// a_i = ratios[i] * scale with every ratio a positive rational.
struct ScaleWitness {
    Surd scale;
    std::vector<Rational> ratios;
};

/// No positive integer solution: either sum 1/a_i > 1, or the full box
/// 1 <= x_i <= box[i] contains none.
struct InfeasibilityCertificate {
    std::vector<Integer> box;
    std::vector<Surd> reciprocals;
    bool lct_exceeds_one = false;
};

/// sum_i solution[i] / a_i = 1 together with an irrational ratio a_i / a_j.
struct ObstructionCertificate {
    PositiveVector solution;
    std::size_t i = 0;
    std::size_t j = 0;
    Surd ratio;
};

struct Verdict {
    Outcome outcome;
    std::variant<ScaleWitness, InfeasibilityCertificate, ObstructionCertificate> certificate;
    bool maximal = false;
};

inline std::optional<ScaleWitness> analytic_witness(const WeightSpec& w, const Limits& lim = {}) {
    const Surd inv_first = reciprocal(w.a.front(), lim);
    ScaleWitness out{w.a.front(), {}};
    for (const auto& ai : w.a) {
        Surd q = ai * inv_first;
        if (!q.is_rational()) return std::nullopt;
        out.ratios.push_back(q.rational_part());
    }
    return out;
}

namespace detail {

inline std::vector<Integer> unit_box(const WeightSpec& w, const Limits& lim) {
    std::vector<Integer> box;
    for (const auto& ai : w.a) box.push_back(floor_of(ai, lim));
    return box;
}

inline void search_units(std::size_t i, PositiveVector& x, const Surd& partial, const Surd& tail_min,
                         const WeightSpec& w, const std::vector<Surd>& inv, const std::vector<Integer>& box,
                         bool find_all, const Limits& lim, std::vector<PositiveVector>& out) {
    const std::size_t last = inv.size() - 1;
    if (i == last) {
        // Remaining unknown is forced: x_m = (1 - partial) * a_m. Each
        // irrational component of the product must cancel.
        Surd forced = (Surd(1) - partial) * w.a[last];
        if (!forced.is_rational()) return;
        const Rational v = forced.rational_part();
        if (boost::multiprecision::denominator(v) != 1 || v < 1) return;
        x[last] = static_cast<std::int64_t>(boost::multiprecision::numerator(v));
        out.push_back(x);
        return;
    }
    const Surd rest = tail_min - inv[i];
    for (std::int64_t k = 1; Integer(k) <= box[i]; ++k) {
        Surd here = partial + Surd(Rational(k)) * inv[i];
        if (sign(here + rest - Surd(1), lim) > 0) break;
        x[i] = k;
        search_units(i + 1, x, here, rest, w, inv, box, find_all, lim, out);
        if (!find_all && !out.empty()) return;
    }
}

}  // namespace detail

/// Positive integer solutions of sum_i x_i / a_i = 1, lexicographic.
inline std::vector<PositiveVector> unit_solutions(const WeightSpec& w, bool find_all, const Limits& lim = {}) {
    const auto inv = inverse_weights(w, lim);
    Surd total;
    for (const auto& r : inv) total += r;
    if (sign(total - Surd(1), lim) > 0) return {};

    const auto box = detail::unit_box(w, lim);
    Integer volume = 1;
    for (const auto& b : box) {
        if (b < 1) return {};
        volume *= b;
    }
    if (volume > lim.max_box) throw BoxTooLarge("solution box exceeds " + std::to_string(lim.max_box) + " points");

    std::vector<PositiveVector> out;
    PositiveVector x(w.m(), 0);
    detail::search_units(0, x, Surd{}, total, w, inv, box, find_all, lim, out);
    return out;
}

inline bool classify_maximal(const WeightSpec& w, const Limits& lim = {}) {
    return !unit_solutions(w, false, lim).empty();
}

inline Verdict decide(const WeightSpec& w, const Limits& lim = {}) {
    const auto solutions = unit_solutions(w, false, lim);
    const bool maximal = !solutions.empty();
    if (auto witness = analytic_witness(w, lim)) return {Outcome::ApproximableAnalytic, *witness, maximal};

    if (!maximal) {
        InfeasibilityCertificate cert{detail::unit_box(w, lim), inverse_weights(w, lim), false};
        Surd total;
        for (const auto& r : cert.reciprocals) total += r;
        cert.lct_exceeds_one = sign(total - Surd(1), lim) > 0;
        return {Outcome::ApproximableDiophantine, std::move(cert), false};
    }

    ObstructionCertificate cert{solutions.front(), 0, 0, {}};
    const Surd inv_first = reciprocal(w.a.front(), lim);
    for (std::size_t i = 1; i < w.m(); ++i) {
        Surd q = w.a[i] * inv_first;
        if (!q.is_rational()) {
            cert.i = i;
            cert.ratio = std::move(q);
            break;
        }
    }
    return {Outcome::NotApproximable, std::move(cert), true};
}

/// Re-checks a verdict's certificate from scratch.
inline bool verify_certificate(const Verdict& v, const WeightSpec& w, const Limits& lim = {}) {
    const std::size_t m = w.m();
    switch (v.outcome) {
        case Outcome::ApproximableAnalytic: {
            const auto* c = std::get_if<ScaleWitness>(&v.certificate);
            if (!c || c->ratios.size() != m || sign(c->scale, lim) <= 0) return false;
            for (std::size_t i = 0; i < m; ++i)
                if (c->ratios[i] <= 0 || Surd(c->ratios[i]) * c->scale != w.a[i]) return false;
            return true;
        }
        case Outcome::ApproximableDiophantine: {
            const auto* c = std::get_if<InfeasibilityCertificate>(&v.certificate);
            if (!c || c->reciprocals.size() != m || c->box.size() != m || v.maximal) return false;
            Surd total;
            for (std::size_t i = 0; i < m; ++i) {
                if (c->reciprocals[i] * w.a[i] != Surd(1)) return false;
                if (c->box[i] != floor_of(w.a[i], lim)) return false;
                total += c->reciprocals[i];
            }
            if (c->lct_exceeds_one) return sign(total - Surd(1), lim) > 0;
            // Unpruned sweep of the whole box.
            Integer volume = 1;
            for (const auto& b : c->box) volume *= b < 0 ? Integer(0) : b;
            if (volume == 0) return true;
            if (volume > lim.max_box) throw BoxTooLarge("certificate box too large to re-check");
            PositiveVector x(m, 1);
            for (;;) {
                Surd s;
                for (std::size_t i = 0; i < m; ++i) s += Surd(Rational(x[i])) * c->reciprocals[i];
                if (s == Surd(1)) return false;
                std::size_t i = 0;
                while (i < m && Integer(++x[i]) > c->box[i]) x[i++] = 1;
                if (i == m) return true;
            }
        }
        case Outcome::NotApproximable: {
            const auto* c = std::get_if<ObstructionCertificate>(&v.certificate);
            if (!c || c->solution.size() != m || !v.maximal || c->i >= m || c->j >= m) return false;
            Surd s;
            for (std::size_t i = 0; i < m; ++i) {
                if (c->solution[i] < 1) return false;
                s += Surd(Rational(c->solution[i])) * reciprocal(w.a[i], lim);
            }
            if (s != Surd(1)) return false;
            return !c->ratio.is_rational() && c->ratio * w.a[c->j] == w.a[c->i];
        }
    }
    return false;
}

}  // namespace equising
