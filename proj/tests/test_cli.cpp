#include <sstream>

#include <gtest/gtest.h>

#include "fano/cli.hpp"

using namespace fano;

namespace {

std::string fixture(const std::string& name) { return std::string(FANO_TEST_DATA) + "/" + name; }

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "fano");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, ClassReport) {
    auto r = invoke({"class", "G(2,5)", "--q", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["status"], "ok");
    EXPECT_EQ(doc["result"]["point_counts"]["2"], "1395");
    EXPECT_EQ(doc["result"]["relative_dimension"], "9");
}

TEST(Cli, ClassicOnFermat) {
    auto r = invoke({"verify-classic", "--variety", fixture("fermat3.var"), "--e", "1,2", "--workers", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "ok");
}

TEST(Cli, IdentityFailureOnSingularCubic) {
    auto r = invoke({"verify-classic", "--variety", fixture("cone_cubic.var")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "identity-failure");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({"verify-classic"}).code, 2);
    EXPECT_EQ(invoke({"probe", "--variety", fixture("ci22_p5.var"), "--q", "2"}).code, 2);
    EXPECT_EQ(invoke({"no-such-command"}).code, 2);
    EXPECT_EQ(invoke({"class", "G(2)"}).code, 2);
    EXPECT_EQ(invoke({"verify-extended", "--variety", fixture("ci22_p5.var"), "--params", "5,2,4,0"}).code, 2);
    EXPECT_EQ(invoke({"probe", "--class", "G(2,5)", "--q", "1,2,3"}).code, 2);
    EXPECT_EQ(invoke({"count", "--variety", fixture("fermat3.var"), "--e", "0"}).code, 2);
}

TEST(Cli, StrictExcludedPlanes) {
    std::vector<std::string> base{"verify-extended", "--variety", fixture("ci22_p5.var"), "--params", "5,3,4,0"};
    auto loose = invoke(base);
    EXPECT_EQ(loose.code, 0) << loose.err;
    base.push_back("--strict");
    auto strict = invoke(base);
    EXPECT_EQ(strict.code, 3);
    EXPECT_NE(strict.err.find("excluded"), std::string::npos);
}

TEST(Cli, IoErrors) {
    EXPECT_EQ(invoke({"count", "--variety", fixture("corrupted.var")}).code, 4);
    EXPECT_EQ(invoke({"count", "--variety", fixture("missing.var")}).code, 4);
}

TEST(Cli, OutputIsDeterministic) {
    for (std::string fmt : {"json", "csv", "text"}) {
        std::vector<std::string> args{"verify-extended", "--variety", fixture("ci22_p5.var"), "--params", "5,3,4,0",
                                      "--format", fmt, "--workers", "2"};
        auto a = invoke(args), b = invoke(args);
        EXPECT_EQ(a.out, b.out) << fmt;
    }
    // apart from the recorded worker count, results do not depend on threading
    auto one = nlohmann::json::parse(invoke({"verify-extended", "--variety", fixture("ci22_p5.var"), "--params", "5,3,4,0", "--workers", "1"}).out);
    auto four = nlohmann::json::parse(invoke({"verify-extended", "--variety", fixture("ci22_p5.var"), "--params", "5,3,4,0", "--workers", "4"}).out);
    EXPECT_EQ(one["result"], four["result"]);
    EXPECT_EQ(one["workers"], 1);
    EXPECT_EQ(four["workers"], 4);
}

TEST(Cli, ProbeReports) {
    auto r = invoke({"probe", "--class", "G(2,5)", "--q", "2,3,4,5"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["result"]["target"]["expected"], "9");
    auto c = invoke({"probe", "--variety", fixture("ci22_p5.var")});
    EXPECT_EQ(c.code, 0) << c.err;
}

TEST(Cli, Help) {
    auto r = invoke({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verify-extended"), std::string::npos);
}
