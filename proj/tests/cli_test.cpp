#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace cinf::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cinf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, DiffGradient) {
  const Result r = cli({"diff", "-n", "2", "x1^2*x2^5"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "2*x1*x2^5, 5*x1^2*x2^4\n");
  EXPECT_EQ(cli({"diff", "--var", "2", "x1^2*x2^5"}).out, "5*x1^2*x2^4\n");
  EXPECT_EQ(cli({"diff", "--mode", "poly", "1/2*x1^2"}).out, "x1\n");
}

TEST(Cli, LineIntegralPoly) {
  const Result r = cli({"lineint", "-n", "2", "--mode", "poly", "x1^2*x2^5, x1^3"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "1/8*x1^3*x2^5 + 1/4*x1^3*x2\n");
  EXPECT_EQ(cli({"lineint", "--mode", "poly", "--at", "1, 2", "x1^2*x2^5, x1^3"}).out, "9/2\n");
}

TEST(Cli, LineIntegralSmoothEvaluates) {
  const Result r = cli({"lineint", "--at", "1,2", "x1^2*x2^5, x1^3"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NEAR(std::stod(r.out), 4.5, 1e-12);
}

TEST(Cli, LineIntegralThenDiffReproducesClosedInput) {
  const Result poly = cli({"lineint", "--mode", "poly", "2*x1*x2^3, 3*x1^2*x2^2 + 1"});
  ASSERT_EQ(poly.code, kOk);
  const std::string potential = poly.out.substr(0, poly.out.size() - 1);
  EXPECT_EQ(cli({"diff", "--mode", "poly", "-n", "2", potential}).out, "2*x1*x2^3, 3*x1^2*x2^2 + 1\n");

  const Result smooth = cli({"lineint", "-n", "2", "cos(x1)*x2, sin(x1)"});
  ASSERT_EQ(smooth.code, kOk);
  const std::string s = smooth.out.substr(0, smooth.out.size() - 1);
  const Result g = cli({"grad", "-n", "2", "--at", "0.5, -0.25", s});
  ASSERT_EQ(g.code, kOk);
  const auto comma = g.out.find(',');
  EXPECT_NEAR(std::stod(g.out.substr(0, comma)), std::cos(0.5) * -0.25, 1e-12);
  EXPECT_NEAR(std::stod(g.out.substr(comma + 1)), std::sin(0.5), 1e-12);
}

TEST(Cli, ApplyOperators) {
  EXPECT_EQ(cli({"apply", "--mode", "poly", "--op", "K", "x1^2*x2"}).out, "3*x1^2*x2\n");
  EXPECT_EQ(cli({"apply", "--mode", "poly", "--op", "Jinv", "x1 + 1"}).out, "1/2*x1 + 1\n");
  EXPECT_EQ(cli({"apply", "--mode", "poly", "--op", "dcirc", "x2, 1"}).out, "x1*x2 + x2\n");
  EXPECT_EQ(cli({"apply", "--op", "counit", "sin(x1) + 3"}).out, "3\n");
  EXPECT_NEAR(std::stod(cli({"apply", "--op", "Kinv", "--at", "0.5", "2*x1^2"}).out), 0.25, 1e-12);
  EXPECT_EQ(cli({"apply", "--op", "L", "x1"}).code, kOk);
  EXPECT_EQ(cli({"apply", "--op", "nope", "x1"}).code, kUsage);
}

TEST(Cli, Epsilon) {
  EXPECT_EQ(cli({"epsilon", "sin(x1) + x1*x2"}).out, "1, 0\n");
  EXPECT_EQ(cli({"epsilon", "--mode", "poly", "3/2*x2 + x1^2"}).out, "0, 3/2\n");
}

TEST(Cli, ClosedAndPotential) {
  EXPECT_EQ(cli({"closed", "x2, x1"}).code, kOk);
  const Result rot = cli({"closed", "x2, -x1"});
  EXPECT_EQ(rot.code, kLawFailure);
  EXPECT_EQ(rot.out, "not closed (worst asymmetry 2)\n");
  EXPECT_EQ(cli({"closed", "--mode", "poly", "x2, -x1"}).code, kLawFailure);
  EXPECT_EQ(cli({"potential", "x2, -x1"}).code, kLawFailure);

  const Result p = cli({"potential", "--mode", "poly", "x2, x1"});
  EXPECT_EQ(p.code, kOk);
  EXPECT_EQ(p.out.substr(0, p.out.find('\n')), "x1*x2");
  EXPECT_EQ(cli({"potential", "x2*cos(x1*x2), x1*cos(x1*x2)"}).code, kOk);
}

TEST(Cli, RotaBaxter) {
  EXPECT_EQ(cli({"rota-baxter", "--mode", "poly", "--v", "1", "3*x1^2"}).out, "x1^3\n");
  EXPECT_EQ(cli({"rota-baxter", "--mode", "poly", "--double", "x1", "x1"}).out, "x1^3\n");
  const Result r = cli({"rota-baxter", "--at", "1", "cos(x1)"});
  EXPECT_NEAR(std::stod(r.out), std::sin(1.0), 1e-12);
  EXPECT_EQ(cli({"rota-baxter", "--v", "1, 2", "-n", "1", "x1"}).code, kUsage);
}

TEST(Cli, ParseErrorsAreUsageErrorsWithPosition) {
  const Result r = cli({"diff", "x1 + (x2"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("1:"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"diff", "-n", "1", "x2"}).code, kUsage);
  EXPECT_EQ(cli({"lineint", "-n", "2", "x1"}).code, kUsage);
  EXPECT_EQ(cli({}).code, kUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kUsage);
  EXPECT_EQ(cli({"--help"}).code, kOk);
}

TEST(Cli, NonConvergenceExitCode) {
  const Result r = cli({"lineint", "--quad-depth", "1", "--quad-order", "2", "--quad-atol", "1e-300",
                        "--quad-rtol", "1e-300", "--at", "3", "exp(sin(10*x1))"});
  EXPECT_EQ(r.code, kNonConvergence) << r.out << r.err;
}

TEST(Cli, CheckJsonSchema) {
  const Result r = cli({"check", "--suite", "calculus", "--mode", "smooth", "--seed", "7", "--trials", "50",
                        "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  const auto& o = j[0];
  EXPECT_EQ(o["law"], "calculus");
  EXPECT_EQ(o["mode"], "smooth-numeric");
  EXPECT_EQ(o["seed"], 7u);
  EXPECT_EQ(o["trials"], 50);
  EXPECT_EQ(o["failures"], 0);
  EXPECT_EQ(o["inconclusive"], 0);
  EXPECT_TRUE(o["worst_error"].is_number_float());
  EXPECT_TRUE(o["elapsed_ms"].is_number_integer());
  EXPECT_EQ(o.size(), 8u);
}

TEST(Cli, CheckJsonRoundTripsThroughItsInputs) {
  const Result first = cli({"check", "--mode", "poly", "--suite", "chain", "--seed", "9", "--format", "json"});
  ASSERT_EQ(first.code, kOk);
  const auto o = nlohmann::json::parse(first.out)[0];
  const Result again = cli({"check", "--mode", o["mode"].get<std::string>(), "--suite", o["law"].get<std::string>(),
                            "--seed", std::to_string(o["seed"].get<std::uint64_t>()), "--trials",
                            std::to_string(o["trials"].get<int>()), "--format", "json"});
  EXPECT_EQ(again.out, first.out);
}

TEST(Cli, CheckNegativeControlFails) {
  const Result r = cli({"check", "--mode", "poly", "--suite", "rota-baxter", "-n", "2", "--naive-integral"});
  EXPECT_EQ(r.code, kLawFailure);
  EXPECT_EQ(r.out.rfind("FAIL", 0), 0u);
  EXPECT_NE(r.out.find("counterexample"), std::string::npos);
}

TEST(Cli, CheckRejectsUnknownSuiteAndPolyLambdaCompat) {
  EXPECT_EQ(cli({"check", "--suite", "nope"}).code, kUsage);
  EXPECT_EQ(cli({"check", "--suite", "lambda-compat", "--mode", "poly"}).code, kUsage);
  EXPECT_EQ(cli({"check", "--suite", "chain", "--naive-integral"}).code, kUsage);
}

TEST(Cli, Demo) {
  const Result r = cli({"demo"});
  EXPECT_EQ(r.code, kOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("1/8*x1^3*x2^5 + 1/4*x1^3*x2"), std::string::npos);
}

}  // namespace
}  // namespace cinf::cli
