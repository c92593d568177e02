#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rotorwalk/cli/acceptance.hpp"
#include "rotorwalk/cli/commands.hpp"

using rotorwalk::cli::run_cli;
using Json = nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
    Json error() const { return Json::parse(err); }
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("rotorwalk_cli_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, SingleParticleEscapesImmediately) {
    const CliRun r = cli({"escape", "--n", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_EQ(j["escaped"], 1);
    EXPECT_EQ(j["returned"], 0);
    EXPECT_EQ(j["steps_total"], 0);
    EXPECT_EQ(j["mechanism"], "+e2,+e1,-e2,-e1");
}

TEST(Cli, EscapeCsvAndArtifacts) {
    const auto dir = scratch("escape");
    const CliRun r = cli({"escape", "--n", "100", "--format", "csv", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string expected = "# schema=escape/1\nn,escaped,returned,steps_total,radius_used\n100,38,62,4162,0\n";
    EXPECT_EQ(r.out, expected);
    EXPECT_EQ(slurp(dir / "escape.csv"), expected);
    EXPECT_EQ(slurp(dir / "escape.csv"), rotorwalk::cli::golden_escape_csv());
    EXPECT_EQ(Json::parse(slurp(dir / "escape.json"))["escaped"], 38);
    EXPECT_EQ(slurp(dir / "escape.rtw").substr(0, 4), "RTW1");

    const CliRun img = cli({"render", "--snapshot", (dir / "escape.rtw").string(), "--out", dir.string()});
    ASSERT_EQ(img.code, 0) << img.err;
    const std::string ppm = slurp(dir / "render.ppm");
    EXPECT_EQ(ppm.size(), 9760U);
    EXPECT_EQ(ppm, rotorwalk::cli::golden_render_ppm());
    std::filesystem::remove_all(dir);
}

TEST(Cli, ValidationErrorsAreJson) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"escape", "--n", "10", "--rule", "random"},
          std::vector<std::string>{"escape", "--n", "10", "--dim", "9"},
          std::vector<std::string>{"escape", "--n", "10", "--mech", "N,N,Q"},
          std::vector<std::string>{"escape"},
          std::vector<std::string>{"frobnicate"},
          std::vector<std::string>{},
          std::vector<std::string>{"green", "--r", "0"},
          std::vector<std::string>{"render", "--n", "5"}}) {
        const CliRun r = cli(args);
        EXPECT_EQ(r.code, 2) << r.err;
        EXPECT_TRUE(r.out.empty());
        EXPECT_EQ(r.error()["error"], "validation") << r.err;
    }
}

TEST(Cli, HelpExitsZero) {
    const CliRun r = cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("escape"), std::string::npos);
}

TEST(Cli, StabilizedFiniteBall) {
    const CliRun r = cli({"finite-ball", "--n", "50", "--schedule", "8,2,64"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_EQ(j["escaped"], 22);
    EXPECT_EQ(j["stabilized"], true);
    ASSERT_EQ(j["trace"].size(), 2U);
    EXPECT_EQ(j["trace"][0]["radius"], 8);
    EXPECT_EQ(j["trace"][1]["radius"], 16);
}

TEST(Cli, UnstabilizedExitsFour) {
    const CliRun r = cli({"finite-ball", "--n", "3000", "--schedule", "2,2,4", "--patience", "3"});
    EXPECT_EQ(r.code, 4) << r.err;
    EXPECT_EQ(r.error()["error"], "not_stabilized");
    EXPECT_FALSE(r.out.empty());
}

TEST(Cli, OdometerChecks) {
    const CliRun r = cli({"odometer", "--n", "20", "--r", "20", "--check-inn", "--check-flux"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_EQ(j["u_origin"], 42);
    EXPECT_EQ(j["inn"]["N"], 42);
    EXPECT_EQ(j["inn"]["exited"], 20);
    EXPECT_EQ(j["inn"]["holds"], true);
    EXPECT_LE(j["max_abs_remainder"].get<int>(), 6);
    EXPECT_EQ(j["remainder_bound"], 6);
}

TEST(Cli, OdometerCsvOutput) {
    const CliRun r = cli({"odometer", "--n", "1", "--r", "2", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "# schema=odometer/1\nx1,x2,count\n0,0,1\n0,1,1\n");
}

TEST(Cli, GreenHandValueAndMonteCarlo) {
    const CliRun r = cli({"green", "--r", "2", "--tol", "1e-14", "--mc", "1,0", "--samples", "20000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_NEAR(j["G_origin"].get<double>(), 1.5, 1e-12);
    EXPECT_NEAR(j["mc"]["exact"].get<double>(), 0.5, 1e-12);
    EXPECT_LT(std::abs(j["mc"]["z"].get<double>()), 4.0);
}

TEST(Cli, SweepIsIndependentOfParallelism) {
    const CliRun a = cli({"sweep", "--mode", "finite-ball", "--n", "10,40", "--rules", "up;random:3", "--parallel", "1"});
    const CliRun b = cli({"sweep", "--mode", "finite-ball", "--n", "10,40", "--rules", "up;random:3", "--parallel", "3"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.json()["cells"].size(), 4U);
    EXPECT_EQ(a.json()["cells"][0]["rule"], "up");
    EXPECT_EQ(a.json()["cells"][2]["rule"], "random:3");
}

TEST(Acceptance, FnvKnownVectors) {
    EXPECT_EQ(rotorwalk::cli::fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(rotorwalk::cli::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}
