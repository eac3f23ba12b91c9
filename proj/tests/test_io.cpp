#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "endline/errors.hpp"
#include "endline/io.hpp"
#include "support.hpp"

using namespace endline;

namespace {

std::string error_of(std::string_view text) {
  try {
    parse_jet_file(text, "jet.txt");
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(JetFile, ParsesWithCommentsAndDefaults) {
  const JetFile f = parse_jet_file("# header\nschema_version = 1\nchart = regular\n\nb = 1   # inline\na30 = 1\n");
  EXPECT_EQ(f.chart, JetChart::regular);
  const auto jet = std::get<RegularEndJet>(to_jet(f));
  EXPECT_EQ(jet.a, 0.0);
  EXPECT_EQ(jet.b, 1.0);
  EXPECT_EQ(jet.a30, 1.0);
}

TEST(JetFile, RejectsWithLineNumbers) {
  EXPECT_EQ(error_of("schema_version = 1\nchart = regular\nfoo = 1\n"), "jet.txt:3: unknown coefficient 'foo'");
  EXPECT_EQ(error_of("schema_version = 1\nchart = regular\na = 1\na = 2\n"), "jet.txt:4: duplicate coefficient 'a'");
  EXPECT_EQ(error_of("schema_version = 1\nchart = regular\na = x\n"), "jet.txt:3: bad number 'x' for 'a'");
  EXPECT_EQ(error_of("schema_version = 1\nchart = regular\na 1\n"), "jet.txt:3: expected key = value");
  EXPECT_EQ(error_of("schema_version = 2\nchart = regular\n"), "jet.txt:1: unsupported schema_version 2");
  EXPECT_EQ(error_of("schema_version = 1\nchart = torus\n"), "jet.txt:2: unknown chart 'torus'");
  EXPECT_EQ(error_of("chart = regular\n"), "jet.txt:2: missing schema_version");
  EXPECT_EQ(error_of("schema_version = 1\nchart = critical-saddle\na = 1\nb = 1\n"),
            "jet.txt:4: coefficient 'b' does not apply to chart critical-saddle");
  EXPECT_EQ(error_of("schema_version = 1\nchart = critical-definite\nk0 = 1\n"),
            "jet.txt:3: coefficient 'k0' does not apply to chart critical-definite");
}

TEST(JetFile, ChartRequirements) {
  EXPECT_THROW(to_jet(parse_jet_file("schema_version = 1\nchart = critical-definite\na = 1\n")), InvalidJet);
  EXPECT_THROW(to_jet(parse_jet_file("schema_version = 1\nchart = critical-saddle\na30 = 1\n")), InvalidJet);
  EXPECT_NO_THROW(to_jet(parse_jet_file("schema_version = 1\nchart = critical-saddle\na = -1\n")));
}

TEST(JetFile, CanonicalRoundTrip) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const RegularEndJet r = fixtures::random_regular_jet(rng);
    const std::string text = write_jet_file(to_jet_file(r));
    EXPECT_EQ(std::get<RegularEndJet>(to_jet(parse_jet_file(text))), r);
    EXPECT_EQ(write_jet_file(parse_jet_file(text)), text);
    const CriticalEndJet d = fixtures::random_definite_jet(rng);
    EXPECT_EQ(std::get<CriticalEndJet>(to_jet(parse_jet_file(write_jet_file(to_jet_file(d))))), d);
    const CriticalEndJet s = fixtures::random_saddle_jet(rng);
    EXPECT_EQ(std::get<CriticalEndJet>(to_jet(parse_jet_file(write_jet_file(to_jet_file(s))))), s);
  }
}

TEST(JetFile, CanonicalFormIsSorted) {
  const JetFile f = parse_jet_file("schema_version = 1\nchart = regular\nb = 0.1\na30 = 0\na = 3e-5\n");
  EXPECT_EQ(write_jet_file(f), "schema_version = 1\nchart = regular\na = 3e-05\nb = 0.1\n");
}

TEST(Report, ClassificationDocument) {
  EndPointClass c;
  c.verdict = Verdict::InflexionElliptic;
  c.certificates = {{"beta", 1.0}, {"a", 0.0}};
  std::ostringstream out;
  write_classification(out, c);
  EXPECT_EQ(out.str(), "verdict = InflexionElliptic\na = 0\nbeta = 1\n");
}
