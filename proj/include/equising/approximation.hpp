#pragma once

// Decreasing equisingular approximations phi_k = log max_i |z_i|^{a_{i,k}}
// with rational a_{i,k} in ((1-eps) a_i, a_i], increasing in k. Because
// phi <= phi_k <= (1-eps) phi near the origin and I(phi) = I((1-eps) phi)
// whenever eps <= eps0, every phi_k has the same multiplier ideal as phi.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "equising/decision.hpp"
#include "equising/staircase.hpp"

namespace equising {

/// Lower best rational approximations of an irrational x > 0, strictly
/// increasing: the even convergents and the semiconvergents between them.
class LowerApproximants {
public:
    explicit LowerApproximants(const Surd& x, const Limits& lim = {}) : lim_(lim) {
        if (x.is_rational()) throw precondition_error("continued fraction of a rational input");
        const Integer c0 = floor_of(x, lim_);
        rest_ = x - Surd(Rational(c0));
        lo_ = {c0, 1};
        const Integer c1 = next_quotient();
        hi_ = {c1 * c0 + 1, c1};
        quotient_ = next_quotient();
    }

    Rational next() {
        if (!started_) {
            started_ = true;
            return Rational(lo_.first, lo_.second);
        }
        ++step_;
        const Integer num = lo_.first + step_ * hi_.first;
        const Integer den = lo_.second + step_ * hi_.second;
        if (den > lim_.max_denominator)
            throw DenominatorCap("approximant denominator exceeds " + std::to_string(lim_.max_denominator));
        if (step_ == quotient_) {
            lo_ = {num, den};
            const Integer odd = next_quotient();
            hi_ = {odd * lo_.first + hi_.first, odd * lo_.second + hi_.second};
            quotient_ = next_quotient();
            step_ = 0;
        }
        return Rational(num, den);
    }

private:
    Integer next_quotient() {
        Surd inv = reciprocal(rest_, lim_);
        Integer c = floor_of(inv, lim_);
        rest_ = inv - Surd(Rational(c));
        return c;
    }

    Limits lim_;
    Surd rest_;
    std::pair<Integer, Integer> lo_;
    std::pair<Integer, Integer> hi_;
    Integer quotient_;
    Integer step_ = 0;
    bool started_ = false;
};

enum class SequenceMode { Constant, Strict };

inline const char* to_string(SequenceMode m) { return m == SequenceMode::Constant ? "Constant" : "Strict"; }

struct TermCertificate {
    std::vector<Exponent> target;  // non-members of I(phi)
    std::vector<Exponent> term;    // non-members of I(phi_k)
};

struct ApproxSequence {
    Surd epsilon;
    std::vector<std::vector<Rational>> terms;
    std::vector<TermCertificate> certificates;
    SequenceMode mode = SequenceMode::Strict;
};

inline WeightSpec rational_weight(const std::vector<Rational>& a, const WeightSpec& like) {
    WeightSpec w = like;
    w.a.assign(a.begin(), a.end());
    return w;
}

inline ApproxSequence build_sequence(const WeightSpec& w, std::size_t K, const std::optional<Surd>& epsilon,
                                     const Limits& lim = {}) {
    if (K == 0) throw precondition_error("K must be positive");
    if (decide(w, lim).outcome == Outcome::NotApproximable)
        throw NotApproximableInput("weight is maximal with no common rational scale");
    if (epsilon && sign(*epsilon, lim) <= 0) throw precondition_error("epsilon must be positive");

    ApproxSequence seq;
    const auto target = nonmember_set(w, 1, lim);

    if (w.all_rational()) {
        seq.mode = SequenceMode::Constant;
        if (epsilon) {
            seq.epsilon = *epsilon;
        } else {
            auto eps0 = epsilon0(w, lim);
            seq.epsilon = eps0 ? *eps0 * Surd(Rational(1, 2)) : Surd(Rational(1, 2));
        }
        std::vector<Rational> a;
        for (const auto& ai : w.a) a.push_back(ai.rational_part());
        for (std::size_t k = 0; k < K; ++k) {
            seq.terms.push_back(a);
            seq.certificates.push_back({target, target});
        }
        return seq;
    }

    seq.mode = SequenceMode::Strict;
    const auto eps0 = epsilon0(w, lim);
    if (!eps0) throw NotApproximableInput("no equisingularity margin");
    if (epsilon) {
        if (compare(*epsilon, *eps0, lim) > 0)
            throw EpsilonTooLarge("epsilon " + to_string(*epsilon) + " exceeds eps0 = " + to_string(*eps0));
        seq.epsilon = *epsilon;
    } else {
        seq.epsilon = *eps0 * Surd(Rational(1, 2));
    }

    seq.terms.assign(K, std::vector<Rational>(w.m()));
    for (std::size_t i = 0; i < w.m(); ++i) {
        const Surd& ai = w.a[i];
        if (ai.is_rational()) {
            for (auto& term : seq.terms) term[i] = ai.rational_part();
            continue;
        }
        LowerApproximants approx(ai, lim);
        Rational shrink = 1;
        for (std::size_t k = 0; k < K; ++k) {
            shrink /= 2;
            // Term k+1 must lie within 2^{-(k+1)} * eps * a_i below a_i.
            const Surd floor_k = ai * (Surd(1) - seq.epsilon * Surd(shrink));
            Rational v = approx.next();
            while (compare(Surd(v), floor_k, lim) < 0) v = approx.next();
            seq.terms[k][i] = v;
        }
    }

    for (const auto& term : seq.terms) {
        auto mine = nonmember_set(rational_weight(term, w), 1, lim);
        if (mine != target) throw CertificateMismatch("approximant changes the multiplier ideal");
        seq.certificates.push_back({target, std::move(mine)});
    }
    return seq;
}

struct SequenceReport {
    std::size_t terms_checked = 0;
    std::size_t samples = 0;
    std::size_t violations = 0;
};

namespace detail {

inline std::string describe_point(const std::vector<double>& moduli) {
    std::ostringstream os;
    os << "|z| = (";
    for (std::size_t i = 0; i < moduli.size(); ++i) os << (i ? ", " : "") << moduli[i];
    os << ")";
    return os.str();
}

// Uniform double in (0, 1], reproducible across standard libraries.
inline double unit_open(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; }

}  // namespace detail

/// Re-verifies every certificate exactly, then samples the punctured unit
/// polydisc and checks phi <= phi_{k+1} <= phi_k <= (1-eps) phi pointwise.
inline SequenceReport verify_sequence(const ApproxSequence& seq, const WeightSpec& w, std::size_t samples,
                                      std::uint64_t seed, const Limits& lim = {}) {
    const std::size_t m = w.m();
    if (seq.certificates.size() != seq.terms.size()) throw CertificateMismatch("certificate count differs from term count");
    const auto target = nonmember_set(w, 1, lim);
    const Surd one_minus_eps = Surd(1) - seq.epsilon;

    SequenceReport report;
    for (std::size_t k = 0; k < seq.terms.size(); ++k) {
        const auto& term = seq.terms[k];
        const std::string where = "term " + std::to_string(k + 1);
        if (term.size() != m) throw CertificateMismatch(where + ": wrong length");
        const auto& cert = seq.certificates[k];
        if (cert.target != target) throw CertificateMismatch(where + ": recorded target staircase is wrong");
        for (const auto& x : term)
            if (x <= 0) throw CertificateMismatch(where + ": non-positive exponent");
        auto mine = nonmember_set(rational_weight(term, w), 1, lim);
        if (mine != cert.term || mine != target)
            throw CertificateMismatch(where + ": non-member set differs from the target");
        for (std::size_t i = 0; i < m; ++i) {
            const Surd v(term[i]);
            if (compare(v, w.a[i], lim) > 0 || compare(v, one_minus_eps * w.a[i], lim) <= 0)
                throw CertificateMismatch(where + ": exponent outside ((1-eps)a_i, a_i]");
            if (k > 0 && term[i] < seq.terms[k - 1][i]) throw CertificateMismatch(where + ": not increasing");
            if (seq.mode == SequenceMode::Strict && !w.a[i].is_rational() && k > 0 && term[i] <= seq.terms[k - 1][i])
                throw CertificateMismatch(where + ": not strictly increasing on an irrational exponent");
        }
        ++report.terms_checked;
    }

    std::vector<double> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = evaluate<double>(w.a[i]);
    std::vector<std::vector<double>> ak(seq.terms.size(), std::vector<double>(m));
    for (std::size_t k = 0; k < seq.terms.size(); ++k)
        for (std::size_t i = 0; i < m; ++i) ak[k][i] = static_cast<double>(seq.terms[k][i]);
    const double shrink = evaluate<double>(one_minus_eps);

    auto weight = [m](const std::vector<double>& exps, const std::vector<double>& logs) {
        double out = -INFINITY;
        for (std::size_t i = 0; i < m; ++i) out = std::max(out, exps[i] * logs[i]);
        return out;
    };

    std::mt19937_64 rng(seed);
    std::vector<double> moduli(m), logs(m);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < m; ++i) {
            const double u = detail::unit_open(rng);
            moduli[i] = std::sqrt(u) * (1.0 - 0x1.0p-53);  // strictly inside the unit disc
            logs[i] = std::log(moduli[i]);
        }
        const double phi = weight(a, logs);
        const double tol = 1e-12 * (1.0 + std::abs(phi));
        std::vector<double> chain{phi};
        for (auto it = ak.rbegin(); it != ak.rend(); ++it) chain.push_back(weight(*it, logs));
        chain.push_back(shrink * phi);
        for (std::size_t c = 0; c + 1 < chain.size(); ++c) {
            if (chain[c] > chain[c + 1] + tol) {
                ++report.violations;
                throw MonotonicityViolation("sandwich fails at " + detail::describe_point(moduli));
            }
        }
        ++report.samples;
    }
    return report;
}

}  // namespace equising
