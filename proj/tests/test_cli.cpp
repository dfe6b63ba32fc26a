#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "equising/cli.hpp"

using namespace equising;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
}

}  // namespace

TEST(Cli, DecideNotApproximable) {
    const auto r = run({"decide", "-a", "1+sqrt(2)", "-a", "1+1/2*sqrt(2)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("NotApproximable"), std::string::npos);
    EXPECT_NE(r.out.find("condition (2) fails: x = (1, 1)"), std::string::npos);

    const json j = run_json({"decide", "-a", "1+sqrt(2)", "-a", "1+1/2*sqrt(2)"});
    EXPECT_EQ(j["schema"], "equising/1");
    EXPECT_EQ(j["verdict"]["outcome"], "NotApproximable");
    EXPECT_EQ(j["verdict"]["certificate"]["x"], json::array({1, 1}));
    EXPECT_EQ(j["verdict"]["maximal"], true);
}

TEST(Cli, DecideCitesConditions) {
    EXPECT_NE(run({"decide", "-a", "2", "-a", "3"}).out.find("condition (1') holds"), std::string::npos);
    EXPECT_NE(run({"decide", "-a", "2", "-a", "sqrt(3)"}).out.find("condition (2) holds"), std::string::npos);
}

TEST(Cli, IdealStaircase) {
    const auto r = run({"ideal", "-a", "2", "-a", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("nonmembers: [(0,0)]"), std::string::npos);
    EXPECT_NE(r.out.find("generators: [(0,1), (1,0)]"), std::string::npos);
    const json j = run_json({"ideal", "-a", "2", "-a", "2"});
    EXPECT_EQ(j["staircase"]["nonmembers"], json::parse("[[0,0]]"));
    EXPECT_EQ(j["staircase"]["generators"], json::parse("[[0,1],[1,0]]"));
    // Byte-identical across runs.
    EXPECT_EQ(run({"ideal", "-a", "3", "-a", "5/2", "--format", "json"}).out,
              run({"ideal", "-a", "3", "-a", "5/2", "--format", "json"}).out);
}

TEST(Cli, EpsilonAndApprox) {
    const json e = run_json({"epsilon", "-a", "2*sqrt(2)", "-a", "2*sqrt(2)"});
    EXPECT_EQ(e["epsilon0"], "1-1/2*sqrt(2)");
    const json none = run_json({"epsilon", "-a", "2", "-a", "2"});
    EXPECT_TRUE(none["epsilon0"].is_null());

    const json a = run_json({"approx", "-a", "sqrt(2)", "-a", "sqrt(2)", "-K", "3"});
    EXPECT_EQ(a["sequence"]["terms"].size(), 3u);
    EXPECT_EQ(a["sequence"]["certificates"].size(), 3u);
    EXPECT_EQ(a["sequence"]["mode"], "Strict");
}

TEST(Cli, WeightsRoundTrip) {
    const json j = run_json({"decide", "-a", "3/2*sqrt(8)", "-a", "6/4+sqrt(12)"});
    EXPECT_EQ(j["weights"], json::array({"3*sqrt(2)", "3/2+2*sqrt(3)"}));
    for (const auto& s : j["weights"]) EXPECT_EQ(to_string(parse_surd(s.get<std::string>())), s.get<std::string>());
}

TEST(Cli, VerifyFromFileAndTamper) {
    const json a = run_json({"approx", "-a", "2*sqrt(2)", "-a", "2*sqrt(2)", "-K", "4"});
    const std::string path = ::testing::TempDir() + "equising_seq.json";
    {
        std::ofstream(path) << a.dump(2);
    }
    const auto ok = run({"verify", "-a", "2*sqrt(2)", "-a", "2*sqrt(2)", "--sequence", path, "--seed", "5"});
    EXPECT_EQ(ok.code, 0) << ok.err;

    json tampered = a;
    tampered["sequence"]["terms"][1] = json::array({"3", "3"});
    {
        std::ofstream(path) << tampered.dump(2);
    }
    const auto bad = run({"verify", "-a", "2*sqrt(2)", "-a", "2*sqrt(2)", "--sequence", path});
    EXPECT_EQ(bad.code, cli::kVerification);
    std::remove(path.c_str());
}

TEST(Cli, SeedDeterminesOutput) {
    const std::vector<std::string> args{"verify", "-a", "sqrt(3)", "-a", "5/2", "--samples", "300", "--seed", "42",
                                        "--format", "json"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, GcurveAndProbe) {
    const json g = run_json({"gcurve", "-a", "2", "-a", "2", "--alpha", "0,0"});
    EXPECT_EQ(g["gcurve"]["maximal_flag"], true);
    EXPECT_EQ(g["gcurve"]["pass"], true);
    const json p = run_json({"probe", "-a", "2", "-a", "2", "--alpha", "1,0"});
    EXPECT_EQ(p["probe"]["verdict"], "Convergent");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"decide"}).code, cli::kUsage);
    EXPECT_EQ(run({"decide", "-a", "sqrt(x)"}).code, cli::kUsage);
    EXPECT_EQ(run({"decide", "-a", "1-sqrt(2)"}).code, cli::kUsage);
    EXPECT_EQ(run({"ideal", "-a", "50", "-a", "50", "--max-box", "100"}).code, cli::kResource);
    EXPECT_EQ(run({"decide", "-a", "sqrt(2)+sqrt(3)", "-a", "1", "--max-primes", "1"}).code, cli::kResource);
    EXPECT_EQ(run({"approx", "-a", "1+sqrt(2)", "-a", "1+1/2*sqrt(2)"}).code, cli::kPrecondition);
    EXPECT_EQ(run({"approx", "-a", "2*sqrt(2)", "-a", "2*sqrt(2)", "--epsilon", "1/2"}).code, cli::kPrecondition);
    EXPECT_EQ(run({"gcurve", "-a", "2", "-a", "2", "--alpha", "1,0"}).code, cli::kPrecondition);
    EXPECT_EQ(run({"probe", "-a", "2", "-a", "2", "--alpha", "1,x"}).code, cli::kUsage);
}
