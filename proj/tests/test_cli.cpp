#include <gtest/gtest.h>

#include <sstream>

#include "bnchain/cli.hpp"
#include "support.hpp"

using namespace bnchain;

namespace {

struct Outcome {
    int status = 0;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int status = cli::run(args, in, out, err);
    return {status, out.str(), err.str()};
}

} // namespace

TEST(Cli, GoldenCasesAreStableAndMatch) {
    const auto cases = support::golden_cases();
    ASSERT_FALSE(cases.empty());
    for (const auto& c : cases) {
        const auto first = run_cli(c.args);
        const auto second = run_cli(c.args);
        EXPECT_EQ(first.status, c.expected) << c.name << "\n" << first.err;
        EXPECT_EQ(first.out, second.out) << c.name;
        EXPECT_EQ(first.out, support::golden_output(c.name)) << c.name;
    }
}

TEST(Cli, JsonOutputsCarryTheFormatVersion) {
    for (const auto& c : support::golden_cases()) {
        const auto r = run_cli(c.args);
        if (r.out.empty() || r.out.front() != '{') continue;
        const auto doc = io::parse(r.out, c.name.c_str());
        EXPECT_EQ(doc.at("format_version"), io::kFormatVersion) << c.name;
    }
}

TEST(Cli, ConstructedFillingsRevalidate) {
    const auto built = run_cli({"fill-construct", "--mode", "staircase", "--alpha", "5", "--beta", "7", "--g", "19"});
    ASSERT_EQ(built.status, 0);
    const auto checked = run_cli({"fill-validate", "--minimal"}, built.out);
    EXPECT_EQ(checked.status, 0) << checked.out;
    EXPECT_TRUE(io::parse(checked.out, "report").at("valid").get<bool>());
}

TEST(Cli, SeriesRoundTripThroughStdin) {
    const std::string filling = support::slurp(support::fixture_path("torsion_pair_2x4_g10.json"));
    const auto series = run_cli({"series-from-filling", "--special", "5:3"}, filling);
    ASSERT_EQ(series.status, 0) << series.err;
    const auto back = run_cli({"series-to-filling"}, series.out);
    ASSERT_EQ(back.status, 0) << back.err;
    EXPECT_EQ(io::filling_from_json(io::parse(back.out, "filling")),
              support::fixture_filling("torsion_pair_2x4_g10.json"));
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({"params", "--g", "7", "--r", "2", "--d", "6", "--frobnicate"}).status, 2);
    EXPECT_EQ(run_cli({}).status, 2);
    EXPECT_EQ(run_cli({"params", "--g", "7"}).status, 2);
    EXPECT_EQ(run_cli({"params", "--params", "7,2"}).status, 2);
    EXPECT_EQ(run_cli({"certify-maxrank", "--r", "2", "--render", "ascii"}).status, 2);
    EXPECT_EQ(run_cli({"fill-validate"}, "{not json").status, 2);
}

TEST(Cli, DomainErrorsReportJson) {
    const auto r = run_cli({"fill-enumerate", "--g", "40", "--r", "6", "--d", "40", "--budget", "30"});
    EXPECT_EQ(r.status, 1);
    const auto doc = io::parse(r.out, "error");
    EXPECT_TRUE(doc.contains("error"));
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpExitsZero) {
    const auto r = run_cli({"--help"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("fill-construct"), std::string::npos);
}
