#pragma once

// Closed forms and Monte Carlo checks for monomial integrals over the
// sublevel sets {phi < log(r)/2} intersected with the trailing polydisc V:
//
//   int |z^alpha|^2 = pi^n r^s / prod_{i<=m}(alpha_i+1)
//                     * prod_{j>m} rho^{2(alpha_j+1)} / (alpha_j+1),
//   s = sum_{i<=m} (alpha_i+1)/a_i.
//
// These give the independent integrability oracle for the staircase and the
// minimal-integration curves G(-log r) used for the concavity checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "equising/parallel.hpp"
#include "equising/staircase.hpp"

namespace equising {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real to_real(const Rational& q) {
    return Real(boost::multiprecision::numerator(q).str()) / Real(boost::multiprecision::denominator(q).str());
}

/// Decimal string with 17 significant digits.
inline std::string decimal(const Real& x) { return x.str(17, std::ios_base::scientific); }

/// coefficient * pi^pi_power * r^exponent
struct MassFormula {
    Rational coefficient;
    std::size_t pi_power = 0;
    Surd exponent;

    Real at(const Rational& r) const {
        using boost::multiprecision::pow;
        const Real pi = boost::math::constants::pi<Real>();
        return to_real(coefficient) * pow(pi, static_cast<int>(pi_power)) * pow(to_real(r), evaluate<Real>(exponent));
    }
};

namespace detail {

inline Exponent full_exponent(const Exponent& alpha, const WeightSpec& w) {
    if (alpha.size() == w.n) return alpha;
    if (alpha.size() != w.m()) throw precondition_error("exponent must have length m or n");
    Exponent out = alpha;
    out.powers.resize(w.n, 0);
    return out;
}

inline Exponent leading(const Exponent& alpha, std::size_t m) {
    return Exponent(std::vector<std::int64_t>(alpha.powers.begin(), alpha.powers.begin() + static_cast<long>(m)));
}

}  // namespace detail

/// Symbolic mass of |z^alpha|^2 over {phi < log(r)/2} cap V.
inline MassFormula closed_form_mass(const Exponent& alpha_in, const WeightSpec& w, const Limits& lim = {}) {
    const Exponent alpha = detail::full_exponent(alpha_in, w);
    MassFormula out;
    out.pi_power = w.n;
    out.coefficient = 1;
    for (std::size_t i = 0; i < w.m(); ++i) out.coefficient /= alpha[i] + 1;
    for (std::size_t j = w.m(); j < w.n; ++j) {
        Rational rho_pow = 1;
        for (std::int64_t e = 0; e < 2 * (alpha[j] + 1); ++e) rho_pow *= w.trailing_radius;
        out.coefficient *= rho_pow / (alpha[j] + 1);
    }
    out.exponent = exponent_sum(detail::leading(alpha, w.m()), inverse_weights(w, lim));
    return out;
}

inline Real closed_form_mass(const Exponent& alpha, const WeightSpec& w, const Rational& r, const Limits& lim = {}) {
    if (r <= 0 || r > 1) throw precondition_error("r must lie in (0, 1]");
    return closed_form_mass(alpha, w, lim).at(r);
}

enum class Region { Max, Sum };

inline const char* to_string(Region r) { return r == Region::Max ? "Max" : "Sum"; }

struct IntegralReport {
    Real closed_form;  // Max-region closed form at the same r
    double mc_estimate = 0;
    double mc_stderr = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    Region region = Region::Max;
    double acceptance = 1;
};

namespace detail {

inline constexpr std::uint64_t kChunk = 1u << 14;

inline double unit_interval(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

inline std::mt19937_64 chunk_stream(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

// Radii of the polydisc enclosing {phi < log(r)/2} cap V.
inline std::vector<double> enclosing_radii(const WeightSpec& w, const Rational& r) {
    std::vector<double> radii;
    const double rd = static_cast<double>(r);
    for (const auto& ai : w.a) radii.push_back(std::pow(rd, 1.0 / (2.0 * evaluate<double>(ai))));
    for (std::size_t j = w.m(); j < w.n; ++j) radii.push_back(static_cast<double>(w.trailing_radius));
    return radii;
}

struct Moments {
    double sum = 0;
    double sum_sq = 0;
    std::uint64_t accepted = 0;
};

}  // namespace detail

/// Monte Carlo estimate of int |z^alpha|^2 over the Max or Sum sublevel set,
/// by uniform sampling of the enclosing polydisc (rejection for Sum).
inline IntegralReport mc_mass(const Exponent& alpha_in, const WeightSpec& w, const Rational& r, Region region,
                              std::uint64_t N, std::uint64_t seed, unsigned threads = 1, const Limits& lim = {}) {
    if (N < 1000) throw precondition_error("Monte Carlo needs at least 1000 samples");
    const Exponent alpha = detail::full_exponent(alpha_in, w);
    const auto radii = detail::enclosing_radii(w, r);
    std::vector<double> a;
    for (const auto& ai : w.a) a.push_back(evaluate<double>(ai));
    const double level = std::sqrt(static_cast<double>(r));
    const std::size_t m = w.m();
    const std::size_t n = w.n;

    const std::uint64_t chunks = (N + detail::kChunk - 1) / detail::kChunk;
    std::vector<detail::Moments> parts(chunks);
    for_each_chunk(chunks, threads, [&](std::size_t c) {
        auto rng = detail::chunk_stream(seed, c);
        const std::uint64_t count = std::min<std::uint64_t>(detail::kChunk, N - c * detail::kChunk);
        detail::Moments mom;
        for (std::uint64_t s = 0; s < count; ++s) {
            double f = 1;
            double weight_sum = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double rho = radii[i] * std::sqrt(detail::unit_interval(rng));
                f *= std::pow(rho, 2.0 * static_cast<double>(alpha[i]));
                if (i < m) weight_sum += std::pow(rho, a[i]);
            }
            if (region == Region::Sum && weight_sum >= level) f = 0;
            else ++mom.accepted;
            mom.sum += f;
            mom.sum_sq += f * f;
        }
        parts[c] = mom;
    });

    detail::Moments total;
    for (const auto& p : parts) {
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
        total.accepted += p.accepted;
    }
    double volume = 1;
    for (double R : radii) volume *= M_PI * R * R;

    IntegralReport out;
    out.closed_form = closed_form_mass(alpha, w, r, lim);
    out.samples = N;
    out.seed = seed;
    out.region = region;
    out.acceptance = static_cast<double>(total.accepted) / static_cast<double>(N);
    if (out.acceptance < 1e-6) throw DegenerateRegion("acceptance rate below 1e-6");
    const double mean = total.sum / static_cast<double>(N);
    const double var = std::max(0.0, (total.sum_sq - static_cast<double>(N) * mean * mean) / static_cast<double>(N - 1));
    out.mc_estimate = volume * mean;
    out.mc_stderr = volume * std::sqrt(var / static_cast<double>(N));
    return out;
}

// ---------------------------------------------------------------------------
// Integrability of |z^alpha|^2 e^{-2 phi} near the origin, from dyadic shells.

enum class Integrability { Convergent, Divergent, Inconclusive };

inline const char* to_string(Integrability v) {
    switch (v) {
        case Integrability::Convergent: return "Convergent";
        case Integrability::Divergent: return "Divergent";
        case Integrability::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct ProbeReport {
    Integrability verdict = Integrability::Inconclusive;
    Real min_ratio;
    Real max_ratio;
    Real partial_sum;  // lower bound for the integral over {phi < 0} from the shells
};

inline constexpr int kProbeShells = 64;
inline constexpr double kProbeTolerance = 1e-12;

/// On the shell {2^{-j-1} <= e^{2 phi} < 2^{-j}} the factor e^{-2 phi} is at
/// least 2^j, so the shell contributes at least 2^j (M(2^{-j}) - M(2^{-j-1})).
/// Constant-ratio shells sum geometrically: ratio < 1 converges, >= 1 diverges.
inline ProbeReport integrability_probe(const Exponent& alpha, const WeightSpec& w, const Limits& lim = {}) {
    const MassFormula mass = closed_form_mass(alpha, w, lim);
    std::vector<Real> shells;
    Rational r = 1;
    Real weight = 1;
    Real outer = mass.at(r);
    for (int j = 0; j <= kProbeShells; ++j) {
        r /= 2;
        const Real inner = mass.at(r);
        shells.push_back((outer - inner) * weight);
        outer = inner;
        weight *= 2;
    }

    ProbeReport out;
    out.partial_sum = 0;
    for (int j = 0; j < kProbeShells; ++j) out.partial_sum += shells[static_cast<std::size_t>(j)];
    // Rounding guard at 50 digits: ratios this close to 1 are taken as exactly 1.
    const Real unity = Real(1) - Real("1e-40");
    const Real cutoff = Real(1) - Real(kProbeTolerance);
    bool all_below = true;
    bool all_nondecreasing = true;
    for (std::size_t j = 0; j + 1 < shells.size(); ++j) {
        const Real ratio = shells[j + 1] / shells[j];
        if (j == 0) out.min_ratio = out.max_ratio = ratio;
        out.min_ratio = std::min(out.min_ratio, ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
        if (!(ratio < cutoff)) all_below = false;
        if (ratio < unity) all_nondecreasing = false;
    }
    out.verdict = all_below ? Integrability::Convergent
                  : all_nondecreasing ? Integrability::Divergent
                                      : Integrability::Inconclusive;
    return out;
}

// ---------------------------------------------------------------------------
// Minimal-integration curves G(-log r) = int_{phi < log(r)/2} |z^alpha|^2 for
// non-member alpha, and their concavity in r.

struct GCurve {
    Exponent alpha;
    std::vector<Rational> rs;
    std::vector<Real> values;
    Surd s;
    bool maximal_flag = false;
};

struct GCurveReport {
    GCurve curve;
    bool nondecreasing = true;
    bool concave = true;
    bool lower_bound = true;
    bool equality_everywhere = true;  // G(-log r) == r G(0) on the grid, within tolerance
    bool pass = true;
};

inline constexpr double kCurveTolerance = 1e-9;

inline GCurveReport g_curve_check(const Exponent& alpha, const WeightSpec& w, std::vector<Rational> grid,
                                  const Limits& lim = {}) {
    const MassFormula mass = closed_form_mass(alpha, w, lim);
    if (sign(mass.exponent - Surd(1), lim) > 0)
        throw PreconditionMemberExponent("exponent sum " + to_string(mass.exponent) +
                                         " exceeds 1: z^alpha is in the ideal and G vanishes");
    for (const auto& r : grid)
        if (r <= 0 || r > 1) throw precondition_error("grid points must lie in (0, 1]");
    std::sort(grid.begin(), grid.end());

    GCurveReport rep;
    rep.curve.alpha = alpha;
    rep.curve.s = mass.exponent;
    rep.curve.maximal_flag = mass.exponent == Surd(1);
    rep.curve.rs = grid;
    for (const auto& r : grid) rep.curve.values.push_back(mass.at(r));

    const Real g0 = mass.at(1);
    const Real tol(kCurveTolerance);
    const auto& v = rep.curve.values;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0 && v[i] < v[i - 1]) rep.nondecreasing = false;
        const Real linear = to_real(grid[i]) * g0;
        if (v[i] < linear * (1 - tol)) rep.lower_bound = false;
        if (abs(v[i] - linear) > tol * linear) rep.equality_everywhere = false;
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            const Real mid = mass.at((grid[i] + grid[j]) / 2);
            const Real chord = (v[i] + v[j]) / 2;
            if (mid - chord < -tol * chord) rep.concave = false;
        }
    }
    rep.pass = rep.nondecreasing && rep.concave && rep.lower_bound &&
               (!rep.curve.maximal_flag || rep.equality_everywhere);
    return rep;
}

// ---------------------------------------------------------------------------
// Bessel inequality for f = sum_alpha b_alpha z^alpha:
//   int |f|^2 e^{-2 phi} >= int |b_alpha z^alpha|^2 e^{-2 phi}  for every alpha.

using MonomialTerm = std::pair<Exponent, std::complex<double>>;

/// int_{phi < log(r)/2} cap V |z^alpha|^2 e^{-2 phi} = C s/(s-1) r^{s-1} for s > 1.
inline Real weighted_mass(const Exponent& alpha, const WeightSpec& w, const Rational& r, const Limits& lim = {}) {
    const MassFormula mass = closed_form_mass(alpha, w, lim);
    using boost::multiprecision::pow;
    const Real s = evaluate<Real>(mass.exponent);
    const Real pi = boost::math::constants::pi<Real>();
    return to_real(mass.coefficient) * pow(pi, static_cast<int>(mass.pi_power)) * s / (s - 1) *
           pow(to_real(r), s - 1);
}

struct BesselTermReport {
    Exponent alpha;
    Real exact;          // |b|^2 * weighted mass
    double mc = 0;
    double mc_gap = 0;   // MC mean of (|f|^2 - |b z^alpha|^2) e^{-2 phi} times volume
    double mc_gap_stderr = 0;
    bool pass = false;
};

struct BesselReport {
    Real exact_total;
    double mc_total = 0;
    double mc_total_stderr = 0;
    std::vector<BesselTermReport> terms;
    bool exact_pass = true;
    bool mc_pass = true;
    bool pass() const { return exact_pass && mc_pass; }
};

inline BesselReport bessel_check(const std::vector<MonomialTerm>& coeffs, const WeightSpec& w, const Rational& r,
                                 std::uint64_t N, std::uint64_t seed, unsigned threads = 1, const Limits& lim = {}) {
    if (r <= 0 || r > 1) throw precondition_error("r must lie in (0, 1]");
    std::vector<MonomialTerm> f;
    for (const auto& [alpha, b] : coeffs) {
        if (b == std::complex<double>(0)) continue;
        const Exponent full = detail::full_exponent(alpha, w);
        if (integrability_probe(full, w, lim).verdict != Integrability::Convergent)
            throw NonIntegrableTerm("|z^alpha|^2 e^{-2 phi} is not integrable for some term");
        f.emplace_back(full, b);
    }

    BesselReport rep;
    rep.exact_total = 0;
    for (const auto& [alpha, b] : f) {
        BesselTermReport t;
        t.alpha = alpha;
        t.exact = Real(std::norm(b)) * weighted_mass(alpha, w, r, lim);
        rep.exact_total += t.exact;
        rep.terms.push_back(std::move(t));
    }
    // Orthogonality: the total is the sum of the terms, each non-negative.
    for (const auto& t : rep.terms)
        if (t.exact < 0 || t.exact > rep.exact_total) rep.exact_pass = false;

    const auto radii = detail::enclosing_radii(w, r);
    std::vector<double> a;
    for (const auto& ai : w.a) a.push_back(evaluate<double>(ai));
    const std::size_t n = w.n;
    const std::size_t m = w.m();
    const std::size_t k = f.size();

    // Per chunk: sum and sum of squares of the total integrand and of each gap.
    struct Acc {
        std::vector<double> sum, sq, term_sum;
    };
    const std::uint64_t chunks = (N + detail::kChunk - 1) / detail::kChunk;
    std::vector<Acc> parts(chunks);
    for_each_chunk(chunks, threads, [&](std::size_t c) {
        auto rng = detail::chunk_stream(seed, c);
        const std::uint64_t count = std::min<std::uint64_t>(detail::kChunk, N - c * detail::kChunk);
        Acc acc{std::vector<double>(k + 1, 0), std::vector<double>(k + 1, 0), std::vector<double>(k, 0)};
        std::vector<std::complex<double>> z(n);
        for (std::uint64_t s = 0; s < count; ++s) {
            double phi = -INFINITY;
            for (std::size_t i = 0; i < n; ++i) {
                const double rho = radii[i] * std::sqrt(detail::unit_interval(rng));
                const double theta = 2 * M_PI * detail::unit_interval(rng);
                z[i] = std::polar(rho, theta);
                if (i < m) phi = std::max(phi, a[i] * std::log(rho));
            }
            const double damp = std::exp(-2 * phi);
            std::complex<double> total = 0;
            std::vector<double> mono(k);
            for (std::size_t t = 0; t < k; ++t) {
                std::complex<double> v = f[t].second;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::int64_t e = 0; e < f[t].first[i]; ++e) v *= z[i];
                total += v;
                mono[t] = std::norm(v) * damp;
            }
            const double whole = std::norm(total) * damp;
            acc.sum[k] += whole;
            acc.sq[k] += whole * whole;
            for (std::size_t t = 0; t < k; ++t) {
                const double gap = whole - mono[t];
                acc.sum[t] += gap;
                acc.sq[t] += gap * gap;
                acc.term_sum[t] += mono[t];
            }
        }
        parts[c] = std::move(acc);
    });

    Acc total{std::vector<double>(k + 1, 0), std::vector<double>(k + 1, 0), std::vector<double>(k, 0)};
    for (const auto& p : parts) {
        for (std::size_t t = 0; t <= k; ++t) {
            total.sum[t] += p.sum[t];
            total.sq[t] += p.sq[t];
        }
        for (std::size_t t = 0; t < k; ++t) total.term_sum[t] += p.term_sum[t];
    }
    double volume = 1;
    for (double R : radii) volume *= M_PI * R * R;
    const double dn = static_cast<double>(N);
    auto stats = [&](std::size_t t) {
        const double mean = total.sum[t] / dn;
        const double var = std::max(0.0, (total.sq[t] - dn * mean * mean) / (dn - 1));
        return std::pair{volume * mean, volume * std::sqrt(var / dn)};
    };
    std::tie(rep.mc_total, rep.mc_total_stderr) = stats(k);
    for (std::size_t t = 0; t < k; ++t) {
        auto& tr = rep.terms[t];
        tr.mc = volume * total.term_sum[t] / dn;
        std::tie(tr.mc_gap, tr.mc_gap_stderr) = stats(t);
        tr.pass = tr.mc_gap >= -3 * tr.mc_gap_stderr;
        if (!tr.pass) rep.mc_pass = false;
    }
    return rep;
}

}  // namespace equising
