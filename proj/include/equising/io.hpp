#pragma once

// JSON forms of staircases, verdicts, sequences and oracle reports.
// Exact values are written as canonical strings ("3/2", "1+sqrt(2)") so that
// re-parsing reproduces identical canonical objects.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "equising/approximation.hpp"
#include "equising/decision.hpp"
#include "equising/oracle.hpp"
#include "equising/parse.hpp"
#include "equising/staircase.hpp"

namespace equising {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "equising/1";

inline json to_json(const Exponent& e) { return json(e.powers); }

inline json to_json(const std::vector<Exponent>& es) {
    json out = json::array();
    for (const auto& e : es) out.push_back(to_json(e));
    return out;
}

inline std::vector<Exponent> exponents_from_json(const json& j) {
    std::vector<Exponent> out;
    for (const auto& e : j) out.emplace_back(e.get<std::vector<std::int64_t>>());
    return out;
}

inline json to_json(const std::vector<Surd>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

inline json to_json(const Staircase& s) {
    return json{{"scale", to_string(s.scale)}, {"nonmembers", to_json(s.nonmembers)}, {"generators", to_json(s.generators)}};
}

/// 64-bit FNV-1a, hex. Stable digest of a canonical serialization.
inline std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string digest(const std::vector<Exponent>& es) { return digest(to_json(es).dump()); }

// ---------------------------------------------------------------------------
// Verdicts

inline json to_json(const Verdict& v) {
    json cert;
    if (const auto* c = std::get_if<ScaleWitness>(&v.certificate)) {
        json ratios = json::array();
        for (const auto& q : c->ratios) ratios.push_back(to_string(q));
        cert = {{"kind", "scale"}, {"c", to_string(c->scale)}, {"ratios", ratios}};
    } else if (const auto* c = std::get_if<InfeasibilityCertificate>(&v.certificate)) {
        json box = json::array();
        for (const auto& b : c->box) box.push_back(b.str());
        cert = {{"kind", "infeasible"},
                {"box", box},
                {"reciprocals", to_json(c->reciprocals)},
                {"lct_exceeds_one", c->lct_exceeds_one}};
    } else if (const auto* c = std::get_if<ObstructionCertificate>(&v.certificate)) {
        cert = {{"kind", "solution"},
                {"x", c->solution},
                {"irrational_pair", {c->i, c->j}},
                {"ratio", to_string(c->ratio)}};
    }
    return json{{"outcome", to_string(v.outcome)}, {"maximal", v.maximal}, {"certificate", cert}};
}

inline Verdict verdict_from_json(const json& j) {
    const std::string outcome = j.at("outcome").get<std::string>();
    const json& cert = j.at("certificate");
    const bool maximal = j.at("maximal").get<bool>();
    if (outcome == "ApproximableAnalytic") {
        ScaleWitness w{parse_surd(cert.at("c").get<std::string>()), {}};
        for (const auto& q : cert.at("ratios")) w.ratios.push_back(parse_surd(q.get<std::string>()).rational_part());
        return {Outcome::ApproximableAnalytic, w, maximal};
    }
    if (outcome == "ApproximableDiophantine") {
        InfeasibilityCertificate c;
        for (const auto& b : cert.at("box")) c.box.emplace_back(b.get<std::string>());
        for (const auto& r : cert.at("reciprocals")) c.reciprocals.push_back(parse_surd(r.get<std::string>()));
        c.lct_exceeds_one = cert.at("lct_exceeds_one").get<bool>();
        return {Outcome::ApproximableDiophantine, c, maximal};
    }
    if (outcome == "NotApproximable") {
        ObstructionCertificate c;
        c.solution = cert.at("x").get<PositiveVector>();
        c.i = cert.at("irrational_pair").at(0).get<std::size_t>();
        c.j = cert.at("irrational_pair").at(1).get<std::size_t>();
        c.ratio = parse_surd(cert.at("ratio").get<std::string>());
        return {Outcome::NotApproximable, c, maximal};
    }
    throw usage_error("unknown outcome '" + outcome + "'");
}

// ---------------------------------------------------------------------------
// Approximation sequences

inline json to_json(const ApproxSequence& seq) {
    json terms = json::array();
    for (const auto& t : seq.terms) {
        json row = json::array();
        for (const auto& q : t) row.push_back(to_string(q));
        terms.push_back(row);
    }
    json certs = json::array();
    for (const auto& c : seq.certificates)
        certs.push_back({{"digest", digest(c.term)}, {"nonmembers", to_json(c.term)}});
    json target = seq.certificates.empty() ? json::array() : to_json(seq.certificates.front().target);
    return json{{"epsilon", to_string(seq.epsilon)},
                {"mode", to_string(seq.mode)},
                {"target_nonmembers", target},
                {"target_digest", digest(target.dump())},
                {"terms", terms},
                {"certificates", certs}};
}

inline ApproxSequence sequence_from_json(const json& j) {
    ApproxSequence seq;
    seq.epsilon = parse_surd(j.at("epsilon").get<std::string>());
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "Constant" && mode != "Strict") throw usage_error("unknown sequence mode '" + mode + "'");
    seq.mode = mode == "Constant" ? SequenceMode::Constant : SequenceMode::Strict;
    const auto target = exponents_from_json(j.at("target_nonmembers"));
    if (digest(target) != j.at("target_digest").get<std::string>())
        throw CertificateMismatch("target digest does not match its non-member list");
    for (const auto& row : j.at("terms")) {
        std::vector<Rational> t;
        for (const auto& q : row) {
            Surd x = parse_surd(q.get<std::string>());
            if (!x.is_rational()) throw usage_error("sequence terms must be rational");
            t.push_back(x.rational_part());
        }
        seq.terms.push_back(std::move(t));
    }
    for (const auto& c : j.at("certificates")) {
        auto term = exponents_from_json(c.at("nonmembers"));
        if (digest(term) != c.at("digest").get<std::string>())
            throw CertificateMismatch("certificate digest does not match its non-member list");
        seq.certificates.push_back({target, std::move(term)});
    }
    return seq;
}

// ---------------------------------------------------------------------------
// Oracle reports

inline json to_json(const IntegralReport& r) {
    return json{{"region", to_string(r.region)},
                {"closed_form", decimal(r.closed_form)},
                {"mc_estimate", r.mc_estimate},
                {"mc_stderr", r.mc_stderr},
                {"samples", r.samples},
                {"seed", r.seed},
                {"acceptance", r.acceptance}};
}

inline json to_json(const ProbeReport& p) {
    return json{{"verdict", to_string(p.verdict)},
                {"shells", kProbeShells},
                {"min_ratio", decimal(p.min_ratio)},
                {"max_ratio", decimal(p.max_ratio)},
                {"partial_sum", decimal(p.partial_sum)}};
}

inline json to_json(const GCurveReport& g) {
    json rs = json::array();
    json values = json::array();
    for (const auto& r : g.curve.rs) rs.push_back(to_string(r));
    for (const auto& v : g.curve.values) values.push_back(decimal(v));
    return json{{"alpha", to_json(g.curve.alpha)},
                {"s", to_string(g.curve.s)},
                {"maximal_flag", g.curve.maximal_flag},
                {"r", rs},
                {"G", values},
                {"nondecreasing", g.nondecreasing},
                {"concave", g.concave},
                {"lower_bound", g.lower_bound},
                {"equality_everywhere", g.equality_everywhere},
                {"pass", g.pass}};
}

inline json to_json(const BesselReport& b) {
    json terms = json::array();
    for (const auto& t : b.terms)
        terms.push_back({{"alpha", to_json(t.alpha)},
                         {"exact", decimal(t.exact)},
                         {"mc", t.mc},
                         {"mc_gap", t.mc_gap},
                         {"mc_gap_stderr", t.mc_gap_stderr},
                         {"pass", t.pass}});
    return json{{"exact_total", decimal(b.exact_total)},
                {"mc_total", b.mc_total},
                {"mc_total_stderr", b.mc_total_stderr},
                {"terms", terms},
                {"exact_pass", b.exact_pass},
                {"mc_pass", b.mc_pass}};
}

}  // namespace equising
