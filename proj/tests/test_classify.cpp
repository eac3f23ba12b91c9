#include <gtest/gtest.h>

#include "endline/classify.hpp"
#include "endline/errors.hpp"
#include "support.hpp"

using namespace endline;

namespace {

RegularEndJet regular(double a, double b, double a30, double a21 = 0, double a12 = 0, double a40 = 0) {
  RegularEndJet j;
  j.a = a;
  j.b = b;
  j.a30 = a30;
  j.a21 = a21;
  j.a12 = a12;
  j.a40 = a40;
  return j;
}

CriticalEndJet saddle(double a, double a30) {
  CriticalEndJet j;
  j.kind = CriticalKind::saddle;
  j.a = a;
  j.b = 0;
  j.a30 = a30;
  return j;
}

CriticalEndJet mirrored(CriticalEndJet j) {
  j.a30 = -j.a30;
  j.a12 = -j.a12;
  j.a31 = -j.a31;
  j.a13 = -j.a13;
  return j;
}

}  // namespace

TEST(ClassifyRegular, Examples) {
  EXPECT_EQ(classify_regular(regular(1, 0.3, -2)).verdict, Verdict::Biregular);
  const EndPointClass h = classify_regular(regular(0, -1, 1));
  EXPECT_EQ(h.verdict, Verdict::InflexionHyperbolic);
  EXPECT_EQ(h.certificates.at("beta"), -1);
  EXPECT_EQ(classify_regular(regular(0, 1, 1)).verdict, Verdict::InflexionElliptic);
  EXPECT_EQ(classify_regular(regular(0, 1, 0, 0, 0, 1)).verdict, Verdict::InflexionCubicContact);
  const EndPointClass d1 = classify_regular(regular(0, 0, 1, 0, 1));
  EXPECT_EQ(d1.verdict, Verdict::UmbilicInflexionD1);
  EXPECT_EQ(d1.certificates.at("umbilic_discriminant"), -1);
  EXPECT_EQ(classify_regular(regular(0, 0, 1, 1, 0)).verdict, Verdict::UmbilicInflexionD3);
  EXPECT_EQ(classify_regular(regular(0, 0, 0)).verdict, Verdict::Degenerate);
  EXPECT_EQ(classify_regular(regular(0, 1, 0)).verdict, Verdict::Degenerate);
  EXPECT_EQ(classify_regular(regular(0, 0, 1, 1, 1)).verdict, Verdict::Degenerate);
}

TEST(ClassifyRegular, ToleranceIsRelative) {
  EXPECT_EQ(classify_regular(regular(1e-12, 1, 1)).verdict, Verdict::InflexionElliptic);
  EXPECT_EQ(classify_regular(regular(1e-12, 1, 1), 1e-14).verdict, Verdict::Biregular);
  EXPECT_EQ(classify_regular(regular(1e-11, 1e-3, 1e-3)).verdict, Verdict::Biregular);
}

TEST(ClassifyRegular, ScaleInvariance) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    RegularEndJet j = fixtures::random_regular_jet(rng);
    if (t % 4 == 1) j.a = 0;
    if (t % 4 == 2) j.a = j.a30 = 0;
    if (t % 4 == 3) j.a = j.b = 0;
    const Verdict base = classify_regular(j).verdict;
    for (double lambda : {0.1, 1.0, 10.0}) {
      RegularEndJet s = j;
      for (double* c : {&s.k0, &s.a, &s.b, &s.c, &s.a30, &s.a21, &s.a12, &s.a03, &s.a40, &s.a31, &s.a22, &s.a13,
                        &s.a04})
        *c *= lambda;
      EXPECT_EQ(classify_regular(s).verdict, base);
    }
  }
}

TEST(ClassifyRegular, CubicSignSwapsInflexionType) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    RegularEndJet j = fixtures::random_regular_jet(rng);
    j.a = 0;
    const Verdict v = classify_regular(j).verdict;
    j.a30 = -j.a30;
    const Verdict w = classify_regular(j).verdict;
    EXPECT_EQ(v == Verdict::InflexionHyperbolic ? Verdict::InflexionElliptic : Verdict::InflexionHyperbolic, w);
  }
}

TEST(ClassifyCritical, Examples) {
  CriticalEndJet d;
  d.a = d.b = 1;
  const EndPointClass nf = classify_critical(d);
  EXPECT_EQ(nf.verdict, Verdict::CriticalDefiniteNonFocal);
  EXPECT_EQ(nf.certificates.at("delta"), 0);
  d.a30 = 1;
  EXPECT_EQ(delta(d), 0.0);
  d.a21 = 0.5;
  d.a03 = 0.3;
  EXPECT_EQ(classify_critical(d).verdict, Verdict::CriticalFocalDefinite);

  const EndPointClass even = classify_critical(saddle(1, 1));
  EXPECT_EQ(even.verdict, Verdict::CriticalSaddleEven);
  EXPECT_DOUBLE_EQ(even.certificates.at("sigma"), 1);
  EXPECT_DOUBLE_EQ(even.certificates.at("k1"), 1);
  EXPECT_DOUBLE_EQ(even.certificates.at("k2"), -1.0 / 3);
  EXPECT_EQ(classify_critical(saddle(1, -1)).verdict, Verdict::CriticalSaddleEven);
  EXPECT_EQ(classify_critical(saddle(1, 0)).verdict, Verdict::Degenerate);
  CriticalEndJet odd = saddle(1, 1);
  odd.a03 = -2;
  EXPECT_EQ(classify_critical(odd).verdict, Verdict::CriticalSaddleOdd);

  CriticalEndJet bad;
  bad.a = 0;
  EXPECT_EQ(classify_critical(bad).verdict, Verdict::Degenerate);
}

TEST(ClassifyCritical, DeltaMatchesTypesetPolynomial) {
  // values of the typeset polynomial parsed symbolically and evaluated in exact arithmetic
  CriticalEndJet j;
  j.a = 1.3; j.b = 0.7;
  j.a30 = 0.4; j.a21 = -0.9; j.a12 = 0.25; j.a03 = 0.6;
  j.a40 = -0.3; j.a31 = 0.8; j.a22 = 0.1; j.a13 = -0.55; j.a04 = 0.35;
  EXPECT_NEAR(delta(j), -33.0910947092325, 1e-12);
  CriticalEndJet k;
  k.a = 0.6; k.b = 1.8;
  k.a30 = -0.7; k.a21 = 0.2; k.a12 = 0.9; k.a03 = -0.4;
  k.a40 = 0.5; k.a31 = -0.2; k.a22 = -0.6; k.a13 = 0.3; k.a04 = -0.8;
  EXPECT_NEAR(delta(k), 33.248755666944, 1e-11);
}

TEST(ClassifyCritical, MirrorNegatesDelta) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    const CriticalEndJet j = fixtures::random_definite_jet(rng);
    EXPECT_NEAR(delta(mirrored(j)), -delta(j), 1e-12 * (1 + std::abs(delta(j))));
  }
}

TEST(Verdicts, NamesRoundTrip) {
  for (int v = 0; v <= static_cast<int>(Verdict::Degenerate); ++v)
    EXPECT_EQ(verdict_from_name(verdict_name(static_cast<Verdict>(v))), static_cast<Verdict>(v));
  EXPECT_EQ(verdict_name(Verdict::CriticalDefiniteNonFocal), "CriticalDefiniteNonFocal");
  EXPECT_THROW(verdict_from_name("Focal"), ParseError);
}

TEST(Delta, TermsSumToDelta) {
  CriticalEndJet j;
  j.a30 = 1;
  j.a03 = 1;
  double sum = 0;
  std::map<std::string, double> by_weight;
  for (const auto& t : delta_terms(j)) {
    sum += t.value;
    by_weight[t.weight] = t.value;
  }
  EXPECT_EQ(by_weight.size(), 13u);
  EXPECT_DOUBLE_EQ(by_weight["a^4 b^6"], 36);
  EXPECT_DOUBLE_EQ(by_weight["a^6 b^4"], -36);
  EXPECT_DOUBLE_EQ(by_weight["b^6"], 3);
  EXPECT_DOUBLE_EQ(by_weight["a^6"], -3);
  EXPECT_EQ(sum, delta(j));

  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const CriticalEndJet r = fixtures::random_definite_jet(rng);
    double s = 0;
    for (const auto& term : delta_terms(r)) s += term.value;
    EXPECT_NEAR(s, delta(r), 1e-12 * std::max(1.0, std::abs(delta(r))));
  }
}
