#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "inellipse/canonical_json.hpp"
#include "inellipse/cli.hpp"

namespace inellipse {
namespace {

using nlohmann::json;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = cli::run(args, in, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

const std::string kUnit = R"("triangle": [[0, 0], [1, 0], [0, 1]])";

std::string doc(const std::string& query) { return "{" + kUnit + ", \"query\": " + query + "}"; }

const std::string kFour =
    doc(R"({"two_points": {"p1": [0.25, 0.125], "p2": [0.5, 0.16666666666666666]}})");
const std::string kVertical =
    doc(R"({"point_slope": {"p": [0.3333333333333333, 0.3333333333333333], "slope": "vertical"}})");
const std::string kTangency =
    doc(R"({"boundary_tangency": {"p1": [0.6666666666666666, 0], "p2": [0.25, 0.75]}})");

void expect_proportional(const json& got, const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  double m = 0.0;
  for (double v : want) m = std::max(m, std::abs(v));
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(got[i].get<double>(), want[i] / m, 1e-9) << "coefficient " << i;
  }
}

// Well-formedness of the subset of XML the renderer emits.
bool well_formed(const std::string& xml, int& paths, int& lines) {
  std::vector<std::string> stack;
  paths = lines = 0;
  std::size_t i = 0;
  while ((i = xml.find('<', i)) != std::string::npos) {
    const std::size_t end = xml.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = xml.substr(i + 1, end - i - 1);
    i = end + 1;
    if (tag.starts_with('?') || tag.starts_with('!')) continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (tag.starts_with('/')) {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.ends_with('/');
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (name == "path") ++paths;
    if (name == "line") ++lines;
    if (!self_closing) stack.push_back(name);
  }
  return stack.empty();
}

TEST(Cli, TwoPointsFourEllipses) {
  const Outcome o = run_cli({"two-points"}, kFour);
  ASSERT_EQ(o.code, cli::kSolved) << o.err;
  const json r = json::parse(o.out);
  EXPECT_EQ(r["case"], "generic_4");
  ASSERT_EQ(r["ellipses"].size(), 4u);
  for (const json& e : r["ellipses"]) {
    double m = 0.0;
    for (const json& c : e["coefficients"]) m = std::max(m, std::abs(c.get<double>()));
    EXPECT_DOUBLE_EQ(m, 1.0);
    EXPECT_GT(e["coefficients"][0].get<double>(), 0.0);
    EXPECT_EQ(e["tangent_points"].size(), 3u);
    EXPECT_LT(std::abs(e["residuals"][0].get<double>()), 1e-9);
    EXPECT_LT(std::abs(e["residuals"][1].get<double>()), 1e-9);
  }
}

TEST(Cli, VerticalSlopeCoefficients) {
  const Outcome o = run_cli({"point-slope", "-"}, kVertical);
  ASSERT_EQ(o.code, cli::kSolved) << o.err;
  const json r = json::parse(o.out);
  EXPECT_EQ(r["case"], "unique");
  ASSERT_EQ(r["ellipses"].size(), 1u);
  expect_proportional(r["ellipses"][0]["coefficients"], {25, 4, 4, -10, -4, 1});
  EXPECT_NEAR(r["ellipses"][0]["w"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, TangencyCoefficients) {
  const Outcome o = run_cli({"tangency"}, kTangency);
  ASSERT_EQ(o.code, cli::kSolved) << o.err;
  const json r = json::parse(o.out);
  EXPECT_EQ(r["case"], "boundary_unique");
  expect_proportional(r["ellipses"][0]["coefficients"], {324, 196, 456, -432, -336, 144});
}

TEST(Cli, RawCoefficientsAreUnscaled) {
  const Outcome o = run_cli({"point-slope", "--raw"}, kVertical);
  ASSERT_EQ(o.code, cli::kSolved);
  const json c = json::parse(o.out)["ellipses"][0]["coefficients"];
  // Unit triangle with w = 1/2, t = 1/5: A = w^2, B = t^2, F = t^2 w^2.
  EXPECT_NEAR(c[0].get<double>(), 0.25, 1e-12);
  EXPECT_NEAR(c[1].get<double>(), 0.04, 1e-12);
  EXPECT_NEAR(c[5].get<double>(), 0.01, 1e-12);
}

TEST(Cli, NoSolutionExitsTwo) {
  const Outcome o = run_cli(
      {"point-slope"}, doc(R"({"point_slope": {"p": [0.5, 0.25], "slope": 0.5}})"));
  EXPECT_EQ(o.code, cli::kNoSolution);
  const json r = json::parse(o.out);
  EXPECT_EQ(r["case"], "no_solution:origin");
  EXPECT_TRUE(r["ellipses"].empty());
  EXPECT_TRUE(o.err.empty());
}

TEST(Cli, InputErrorsExitOneWithOneLine) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"two-points"}, "{ not json"},
      {{"two-points"}, R"({"triangle": [[0,0],[1,1],[2,2]], "query": {"two_points":
          {"p1": [0.2, 0.2], "p2": [0.3, 0.3]}}})"},
      {{"two-points"}, doc(R"({"two_points": {"p1": [0.2, 0.9], "p2": [0.3, 0.3]}})")},
      {{"two-points"}, kVertical},
      {{"point-slope"}, doc(R"({"point_slope": {"p": [0.2, 0.2], "slope": "steep"}})")},
      {{"tangency"}, doc(R"({"boundary_tangency": {"p1": [0.2, 0], "p2": [0.6, 0]}})")},
      {{"two-points", "/nonexistent/query.json"}, ""},
      {{"two-points", "--grid", "8", "--check"}, kFour},
      {{"frobnicate"}, kFour},
      {{}, kFour},
  };
  for (const auto& [args, input] : cases) {
    const Outcome o = run_cli(args, input);
    EXPECT_EQ(o.code, cli::kInputError) << input;
    EXPECT_TRUE(o.out.empty());
    ASSERT_FALSE(o.err.empty());
    EXPECT_EQ(o.err.find('\n'), o.err.size() - 1) << o.err;
    EXPECT_TRUE(o.err.starts_with("error: ")) << o.err;
  }
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& [cmd, input] : {std::pair{"two-points", kFour},
                                   std::pair{"point-slope", kVertical},
                                   std::pair{"tangency", kTangency}}) {
    const Outcome a = run_cli({cmd, "--check", "--grid", "96"}, input);
    const Outcome b = run_cli({cmd, "--check", "--grid", "96"}, input);
    EXPECT_EQ(a.code, cli::kSolved);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, CheckAgreesWithOracle) {
  const Outcome o = run_cli({"two-points", "--check"}, kFour);
  ASSERT_EQ(o.code, cli::kSolved) << o.err;
  const json c = json::parse(o.out)["oracle_check"];
  EXPECT_TRUE(c["agree"].get<bool>());
  EXPECT_EQ(c["oracle_count"], 4);
  EXPECT_EQ(c["solver_count"], 4);
  EXPECT_EQ(c["grid_n"], 256);
  const Outcome t = run_cli({"tangency", "--check"}, kTangency);
  EXPECT_TRUE(json::parse(t.out)["oracle_check"]["agree"].get<bool>());
}

TEST(Cli, SvgFigure) {
  const auto path = std::filesystem::temp_directory_path() / "inellipse_cli_test.svg";
  std::filesystem::remove(path);
  const Outcome o = run_cli({"two-points", "--svg", path.string()}, kFour);
  ASSERT_EQ(o.code, cli::kSolved) << o.err;
  std::ifstream file(path);
  std::stringstream svg;
  svg << file.rdbuf();
  int paths = 0;
  int lines = 0;
  EXPECT_TRUE(well_formed(svg.str(), paths, lines));
  EXPECT_EQ(paths, 4);
  EXPECT_EQ(lines, 3);
  EXPECT_NE(svg.str().find("<svg"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, DocumentOptionsAndFlagOverride) {
  const std::string input =
      "{" + kUnit +
      R"(, "query": {"two_points": {"p1": [0.25, 0.125], "p2": [0.5, 0.16666666666666666]}},
          "options": {"grid_n": 80, "tolerance": {"residual": 1e-8}}})";
  const Outcome a = run_cli({"two-points", "--check"}, input);
  ASSERT_EQ(a.code, cli::kSolved) << a.err;
  EXPECT_EQ(json::parse(a.out)["oracle_check"]["grid_n"], 80);
  const Outcome b = run_cli({"two-points", "--check", "--grid", "72"}, input);
  EXPECT_EQ(json::parse(b.out)["oracle_check"]["grid_n"], 72);
  const Outcome bad = run_cli(
      {"two-points"}, "{" + kUnit + R"(, "query": {"two_points": {"p1": [0.25, 0.125],
          "p2": [0.5, 0.2]}}, "options": {"tolerance": {"bogus": 1}}})");
  EXPECT_EQ(bad.code, cli::kInputError);
}

TEST(CanonicalJson, SortedKeysAndFullPrecision) {
  const json v = {{"b", 0.1}, {"a", json::array({1, 2.5, std::nan("")})}, {"c", "x"}};
  EXPECT_EQ(to_canonical_json(v), R"({"a":[1,2.5,null],"b":0.10000000000000001,"c":"x"})");
}

}  // namespace
}  // namespace inellipse
