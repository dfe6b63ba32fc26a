#pragma once

// Command-line front end. `run` is kept separate from main() so the test
// suite can drive every verb in-process.
//
// Exit codes: 0 ok, 1 usage/parse error, 2 resource cap hit,
//             3 precondition violated, 4 verification failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "equising/io.hpp"

namespace equising::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kResource = 2, kPrecondition = 3, kVerification = 4 };

struct Options {
    std::vector<std::string> weights;
    std::size_t n = 0;
    std::string rho = "1/2";
    std::string format = "text";
    std::string t = "1";
    std::string alpha;
    std::string grid = "1/10,1/5,3/10,2/5,1/2,3/5,7/10,4/5,9/10,1";
    std::size_t K = 8;
    std::string epsilon;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    std::string sequence_file;
    unsigned threads = 1;
    Limits limits;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
    return out;
}

inline Exponent parse_exponent(const std::string& s) {
    if (s.empty()) throw usage_error("--alpha is required");
    std::vector<std::int64_t> p;
    for (const auto& item : split(s, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            p.push_back(v);
        } catch (const std::exception&) {
            throw usage_error("bad exponent entry '" + item + "'");
        }
    }
    return Exponent(std::move(p));
}

inline Rational parse_rational(const std::string& s) {
    Surd x = parse_surd(s);
    if (!x.is_rational()) throw usage_error("'" + s + "' is not rational");
    return x.rational_part();
}

inline std::string tuple(const Exponent& e) {
    std::string out = "(";
    for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + std::to_string(e[i]);
    return out + ")";
}

inline std::string tuple_list(const std::vector<Exponent>& es) {
    std::string out = "[";
    for (std::size_t i = 0; i < es.size(); ++i) out += (i ? ", " : "") + tuple(es[i]);
    return out + "]";
}

inline WeightSpec weight_spec(const Options& o) {
    std::vector<Surd> a;
    for (const auto& text : o.weights) a.push_back(parse_weight(text, o.limits));
    return WeightSpec::make(std::move(a), o.n, parse_rational(o.rho), o.limits);
}

inline json header(const std::string& verb, const WeightSpec& w) {
    return json{{"schema", kSchema}, {"command", verb}, {"weights", to_json(w.a)}, {"n", w.n}};
}

inline std::string explain(const Verdict& v, const WeightSpec& w) {
    std::ostringstream os;
    os << "outcome: " << to_string(v.outcome) << "\n";
    if (const auto* c = std::get_if<ScaleWitness>(&v.certificate)) {
        if (w.all_rational())
            os << "condition (1') holds: every a_i is rational\n";
        os << "condition (1) holds: a_i = q_i * c with c = " << c->scale << ", q = (";
        for (std::size_t i = 0; i < c->ratios.size(); ++i) os << (i ? ", " : "") << to_string(c->ratios[i]);
        os << ")\n";
    } else if (const auto* c = std::get_if<InfeasibilityCertificate>(&v.certificate)) {
        os << "condition (1) fails: some ratio a_i/a_j is irrational\n";
        os << "condition (2) holds: sum x_i/a_i = 1 has no positive integer solution";
        if (c->lct_exceeds_one)
            os << " (sum 1/a_i > 1)\n";
        else {
            os << " (box";
            for (const auto& b : c->box) os << " " << b;
            os << " exhausted)\n";
        }
    } else if (const auto* c = std::get_if<ObstructionCertificate>(&v.certificate)) {
        os << "condition (1) fails: a_" << c->i + 1 << "/a_" << c->j + 1 << " = " << c->ratio << " is irrational\n";
        os << "condition (2) fails: x = (";
        for (std::size_t i = 0; i < c->solution.size(); ++i) os << (i ? ", " : "") << c->solution[i];
        os << ") solves sum x_i/a_i = 1\n";
    }
    os << "maximal: " << (v.maximal ? "yes" : "no") << "\n";
    return os.str();
}

inline ApproxSequence sequence_for(const Options& o, const WeightSpec& w) {
    std::optional<Surd> eps;
    if (!o.epsilon.empty()) eps = parse_surd(o.epsilon);
    return build_sequence(w, o.K, eps, o.limits);
}

inline void emit_sequence_text(std::ostream& out, const ApproxSequence& seq) {
    out << "mode: " << to_string(seq.mode) << "\nepsilon: " << seq.epsilon << "\n";
    for (std::size_t k = 0; k < seq.terms.size(); ++k) {
        out << "a^(" << k + 1 << ") = (";
        for (std::size_t i = 0; i < seq.terms[k].size(); ++i) out << (i ? ", " : "") << to_string(seq.terms[k][i]);
        out << ")  nonmembers " << tuple_list(seq.certificates[k].term) << "  [certified]\n";
    }
}

inline int dispatch(const std::string& verb, const Options& o, std::ostream& out) {
    const WeightSpec w = weight_spec(o);
    const bool as_json = o.format == "json";
    json doc = header(verb, w);

    if (verb == "decide") {
        const Verdict v = decide(w, o.limits);
        if (!verify_certificate(v, w, o.limits)) throw CertificateMismatch("verdict certificate failed re-verification");
        if (as_json) {
            doc["verdict"] = to_json(v);
        } else {
            out << explain(v, w);
        }
    } else if (verb == "ideal") {
        const Surd t = parse_weight(o.t, o.limits);
        const Staircase s = nonmembers(w, t, o.limits);
        if (as_json) {
            doc["staircase"] = to_json(s);
        } else {
            out << "scale t: " << s.scale << "\nnonmembers: " << tuple_list(s.nonmembers)
                << "\ngenerators: " << tuple_list(s.generators) << "\nlct: " << lct(w, o.limits) << "\n";
        }
    } else if (verb == "epsilon") {
        const Margin mg = margin(w, o.limits);
        if (as_json) {
            doc["epsilon0"] = mg.epsilon0 ? json(to_string(*mg.epsilon0)) : json(nullptr);
            if (mg.boundary) doc["boundary_exponent"] = to_json(*mg.boundary);
        } else if (mg.epsilon0) {
            out << "epsilon0: " << *mg.epsilon0 << "  (~" << evaluate<double>(*mg.epsilon0) << ")\n";
        } else {
            out << "epsilon0: none; alpha = " << tuple(*mg.boundary)
                << " has sum (alpha_i+1)/a_i = 1, so condition (2) fails\n";
        }
    } else if (verb == "approx") {
        const ApproxSequence seq = sequence_for(o, w);
        if (as_json) {
            doc["sequence"] = to_json(seq);
        } else {
            emit_sequence_text(out, seq);
        }
    } else if (verb == "verify") {
        ApproxSequence seq;
        if (!o.sequence_file.empty()) {
            std::ifstream in(o.sequence_file);
            if (!in) throw usage_error("cannot open " + o.sequence_file);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw usage_error(std::string("bad sequence file: ") + e.what());
            }
            seq = sequence_from_json(j.contains("sequence") ? j.at("sequence") : j);
        } else {
            seq = sequence_for(o, w);
        }
        const SequenceReport rep = verify_sequence(seq, w, o.samples, o.seed, o.limits);
        if (as_json) {
            doc["report"] = {{"terms_checked", rep.terms_checked},
                             {"samples", rep.samples},
                             {"seed", o.seed},
                             {"violations", rep.violations},
                             {"pass", true}};
        } else {
            out << "certificates: " << rep.terms_checked << " verified\nsamples: " << rep.samples
                << " (seed " << o.seed << "), violations: " << rep.violations << "\npass\n";
        }
    } else if (verb == "gcurve") {
        std::vector<Rational> grid;
        for (const auto& item : split(o.grid, ',')) grid.push_back(parse_rational(item));
        const GCurveReport rep = g_curve_check(parse_exponent(o.alpha), w, grid, o.limits);
        if (as_json) {
            doc["gcurve"] = to_json(rep);
        } else {
            out << "s = " << rep.curve.s << (rep.curve.maximal_flag ? "  (maximal: G(-log r) = r G(0))" : "") << "\n";
            for (std::size_t i = 0; i < rep.curve.rs.size(); ++i)
                out << "  r = " << to_string(rep.curve.rs[i]) << "  G = " << decimal(rep.curve.values[i]) << "\n";
            out << "concave: " << rep.concave << "  lower bound: " << rep.lower_bound << "  pass: " << rep.pass
                << "\n";
        }
        if (as_json) out << doc.dump(2) << "\n";
        return rep.pass ? kOk : kVerification;
    } else if (verb == "probe") {
        const Exponent alpha = parse_exponent(o.alpha);
        const ProbeReport rep = integrability_probe(alpha, w, o.limits);
        if (as_json) {
            doc["probe"] = to_json(rep);
        } else {
            out << "probe: " << to_string(rep.verdict) << "  shell ratio in [" << decimal(rep.min_ratio) << ", "
                << decimal(rep.max_ratio) << "]\n";
        }
    }
    if (as_json) out << doc.dump(2) << "\n";
    return kOk;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equisingular approximation decisions for toric weights log max |z_i|^{a_i}", "equising"};
    app.require_subcommand(1, 1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("-a,--weight", o.weights, "exponent a_i (repeat per coordinate), e.g. \"1+sqrt(2)\"")
            ->required();
        sub->add_option("-n,--dimension", o.n, "ambient dimension n >= m (default m)");
        sub->add_option("--rho", o.rho, "polydisc radius for trailing coordinates");
        sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--max-box", o.limits.max_box, "enumeration box cap");
        sub->add_option("--max-bits", o.limits.max_bits, "interval refinement cap in bits");
        sub->add_option("--max-primes", o.limits.max_primes, "prime radical cap for reciprocals");
        sub->add_option("--threads", o.threads, "worker cap");
    };
    auto* decide_cmd = app.add_subcommand("decide", "decide approximability and emit a certificate");
    auto* ideal_cmd = app.add_subcommand("ideal", "monomial staircase of I(t phi)");
    auto* eps_cmd = app.add_subcommand("epsilon", "equisingularity margin eps0");
    auto* approx_cmd = app.add_subcommand("approx", "build a certified approximation sequence");
    auto* verify_cmd = app.add_subcommand("verify", "re-verify an approximation sequence");
    auto* gcurve_cmd = app.add_subcommand("gcurve", "concavity check of G(-log r) for a non-member monomial");
    auto* probe_cmd = app.add_subcommand("probe", "dyadic-shell integrability probe");
    for (auto* sub : {decide_cmd, ideal_cmd, eps_cmd, approx_cmd, verify_cmd, gcurve_cmd, probe_cmd}) common(sub);

    ideal_cmd->add_option("-t,--scale", o.t, "scale t > 0");
    for (auto* sub : {approx_cmd, verify_cmd}) {
        sub->add_option("-K,--terms", o.K, "number of terms");
        sub->add_option("--epsilon", o.epsilon, "window width, 0 < eps <= eps0");
    }
    verify_cmd->add_option("--samples", o.samples, "sample points");
    verify_cmd->add_option("--seed", o.seed, "sampling seed");
    verify_cmd->add_option("--sequence", o.sequence_file, "sequence JSON written by `approx --format json`");
    for (auto* sub : {gcurve_cmd, probe_cmd}) sub->add_option("--alpha", o.alpha, "exponent, e.g. 0,1")->required();
    gcurve_cmd->add_option("--grid", o.grid, "comma-separated r values in (0,1]");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        return detail::dispatch(verb, o, out);
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const resource_error& e) {
        err << "resource cap: " << e.what() << "\n";
        return kResource;
    } catch (const precondition_error& e) {
        err << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const verification_error& e) {
        err << "verification failed: " << e.what() << "\n";
        return kVerification;
    }
}

}  // namespace equising::cli
