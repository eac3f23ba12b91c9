#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "endline/cli.hpp"

using namespace endline;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(ENDLINE_FIXTURES) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("endline_cli_" + name);
  fs::remove_all(p);
  return p;
}

fs::path write_jet(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, ClassifyExamples) {
  auto r = run({"classify", write_jet("a.jet", "schema_version = 1\nchart = regular\na = 1\n").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict = Biregular"), std::string::npos);

  r = run({"classify", write_jet("b.jet", "schema_version = 1\nchart = regular\nb = 1\na30 = 1\n").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict = InflexionElliptic"), std::string::npos);
  EXPECT_NE(r.out.find("beta = 1\n"), std::string::npos);

  r = run({"classify", write_jet("c.jet", "schema_version = 1\nchart = critical-definite\na = 1\nb = 1\n").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict = CriticalDefiniteNonFocal"), std::string::npos);
  EXPECT_NE(r.out.find("delta = 0\n"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"classify", fixture("degenerate_saddle.jet")}).code, 2);
  const auto bad = run({"classify", write_jet("bad.jet", "schema_version = 1\nchart = regular\nzz = 1\n").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("bad.jet:3: unknown coefficient 'zz'"), std::string::npos);
  EXPECT_EQ(run({"classify", "/nonexistent/jet"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"verify", "nosuch"}).code, 1);
  EXPECT_EQ(run({"returnmap", fixture("biregular.jet")}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ReturnMapReport) {
  const auto r = run({"returnmap", fixture("nonfocal.jet"), "--steps", "512"});
  EXPECT_EQ(r.code, 0);
  for (const char* key : {"delta = 0\n", "delta_term[a^4 b^6] = 36\n", "delta_term[a^6 b^4] = -36\n",
                          "delta_term[b^6] = 3\n", "delta_term[a^6] = -3\n", "pi4_closed = 0\n", "relative_gap",
                          "poincare[0.01]"})
    EXPECT_NE(r.out.find(key), std::string::npos) << key;

  const fs::path csv = scratch("q.csv");
  EXPECT_EQ(run({"returnmap", fixture("focal.jet"), "--steps", "64", "--out", csv.string()}).code, 0);
  const std::string text = slurp(csv);
  EXPECT_EQ(text.rfind("theta,q1,q2,q3,q4\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 66);
}

TEST(Cli, PortraitSvg) {
  const fs::path svg = scratch("biregular.svg");
  ASSERT_EQ(run({"portrait", fixture("biregular.jet"), "--out", svg.string(), "--seed-grid", "5"}).code, 0);
  EXPECT_EQ(slurp(svg).find("class=\"singular\""), std::string::npos);
  const fs::path svg2 = scratch("elliptic.svg");
  ASSERT_EQ(run({"portrait", fixture("inflexion_elliptic.jet"), "--out", svg2.string(), "--seed-grid", "5"}).code, 0);
  const std::string text = slurp(svg2);
  std::size_t marks = 0;
  for (auto p = text.find("class=\"singular\""); p != std::string::npos; p = text.find("class=\"singular\"", p + 1))
    ++marks;
  EXPECT_EQ(marks, 1u);
}

TEST(Cli, PortraitCsvIsDeterministic) {
  const fs::path a = scratch("csv_a"), b = scratch("csv_b");
  for (const auto& dir : {a, b})
    ASSERT_EQ(run({"portrait", fixture("inflexion_hyperbolic.jet"), "--format", "csv", "--out", dir.string(),
                   "--seed-grid", "5"})
                  .code,
              0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path();
  }
  EXPECT_GT(files, 3u);
  EXPECT_TRUE(fs::exists(a / "separatrix_000.csv"));
}

TEST(Cli, Trace) {
  const auto r = run({"trace", fixture("biregular.jet"), "--at", "0.1,0.5", "--branch", "minus"});
  ASSERT_EQ(r.code, 0);
  EXPECT_GT(std::count(r.out.begin(), r.out.end(), '\n'), 10);
  EXPECT_EQ(run({"trace", fixture("biregular.jet"), "--at", "0.1,-0.5"}).code, 1);
}

TEST(Cli, Verify) {
  const auto r = run({"verify", "coeffs", "--trials", "10", "--seed", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("result = PASS"), std::string::npos);
  EXPECT_EQ(run({"verify", "coeffs", "--trials", "10", "--seed", "3"}).out, r.out);
}
