#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "endline/errors.hpp"
#include "endline/jets.hpp"
#include "support.hpp"

using namespace endline;
using endline::fixtures::max_coeff_diff;
using endline::fixtures::random_series;
using endline::fixtures::random_unit_series;

namespace {

JetSeries u(int n) { return JetSeries::variable(Axis::first, n); }
JetSeries w(int n) { return JetSeries::variable(Axis::second, n); }

}  // namespace

TEST(JetSeries, AddIsLinear) {
  const JetSeries s = (1.0 + u(3)) + (1.0 + w(3));
  EXPECT_EQ(s.coeff(0, 0), 2.0);
  EXPECT_EQ(s.coeff(1, 0), 1.0);
  EXPECT_EQ(s.coeff(0, 1), 1.0);
}

TEST(JetSeries, AddTruncatesToMinOrder) {
  std::mt19937_64 rng(1);
  const JetSeries s = random_series(rng, 2) + random_series(rng, 4);
  EXPECT_EQ(s.order(), 2);
  EXPECT_EQ(s.coefficients().size(), 6u);
  const JetSeries x = random_series(rng, 4);
  EXPECT_EQ(max_coeff_diff(x + JetSeries(4), x), 0.0);
}

TEST(JetSeries, MulExamples) {
  const JetSeries p = (1.0 + u(2)) * (1.0 - u(2));
  EXPECT_EQ(p.coeff(0, 0), 1.0);
  EXPECT_EQ(p.coeff(1, 0), 0.0);
  EXPECT_EQ(p.coeff(2, 0), -1.0);
  const JetSeries q = (u(2) + w(2)) * (u(2) + w(2));
  EXPECT_EQ(q.coeff(2, 0), 1.0);
  EXPECT_EQ(q.coeff(1, 1), 2.0);
  EXPECT_EQ(q.coeff(0, 2), 1.0);
}

TEST(JetSeries, Reciprocal) {
  const JetSeries r = reciprocal(1.0 + u(3));
  EXPECT_DOUBLE_EQ(r.coeff(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(r.coeff(1, 0), -1.0);
  EXPECT_DOUBLE_EQ(r.coeff(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(r.coeff(3, 0), -1.0);
  EXPECT_DOUBLE_EQ(reciprocal(JetSeries::constant(2.0, 3)).coeff(0, 0), 0.5);
  EXPECT_THROW(reciprocal(u(3)), ZeroConstantTerm);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const JetSeries a = random_unit_series(rng, 6);
    EXPECT_LT(max_coeff_diff(a * reciprocal(a), JetSeries::constant(1.0, 6)), 1e-14);
  }
}

TEST(JetSeries, SqrtSeries) {
  const JetSeries s = sqrt_series(1.0 + 2.0 * u(4) + u(4) * u(4));
  EXPECT_LT(max_coeff_diff(s, 1.0 + u(4)), 1e-15);
  EXPECT_DOUBLE_EQ(sqrt_series(JetSeries::constant(4.0, 2)).coeff(0, 0), 2.0);
  EXPECT_THROW(sqrt_series(-1.0 + u(2)), NonPositiveConstantTerm);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    JetSeries a = random_unit_series(rng, 6);
    const JetSeries r = sqrt_series(a);
    EXPECT_LT(max_coeff_diff(r * r, a), 1e-13);
  }
}

TEST(JetSeries, Differentiate) {
  const JetSeries m = JetSeries::monomial(1.0, 2, 1, 4);
  const JetSeries du = differentiate(m, Axis::first);
  const JetSeries dw = differentiate(m, Axis::second);
  EXPECT_EQ(du.order(), 3);
  EXPECT_EQ(du.coeff(1, 1), 2.0);
  EXPECT_EQ(dw.coeff(2, 0), 1.0);

  std::mt19937_64 rng(9);
  const JetSeries a = random_series(rng, 6);
  const double h = 1e-5, x = 0.01, y = 0.02;
  const double fd_u = (a.evaluate(x + h, y) - a.evaluate(x - h, y)) / (2 * h);
  const double fd_w = (a.evaluate(x, y + h) - a.evaluate(x, y - h)) / (2 * h);
  EXPECT_NEAR(differentiate(a, Axis::first).evaluate(x, y), fd_u, 1e-8);
  EXPECT_NEAR(differentiate(a, Axis::second).evaluate(x, y), fd_w, 1e-8);
  EXPECT_EQ(max_coeff_diff(differentiate(differentiate(a, Axis::first), Axis::second),
                           differentiate(differentiate(a, Axis::second), Axis::first)),
            0.0);
}

TEST(JetSeries, LinearSubstitutionInverse) {
  std::mt19937_64 rng(10);
  const JetSeries a = random_series(rng, 5);
  const double c = std::cos(0.4), s = std::sin(0.4);
  const JetSeries back = linear_substitute(linear_substitute(a, c, -s, s, c), c, s, -s, c);
  EXPECT_LT(max_coeff_diff(a, back), 1e-13);
  EXPECT_NEAR(linear_substitute(a, c, -s, s, c).evaluate(0.2, 0.3), a.evaluate(c * 0.2 - s * 0.3, s * 0.2 + c * 0.3),
              1e-14);
}

TEST(TrigPoly, ReducesToCanonicalBasis) {
  const TrigPoly t = TrigPoly::monomial(1.0, 2, 0) + TrigPoly::monomial(1.0, 0, 2);
  EXPECT_TRUE(t.is_constant(1e-15));
  EXPECT_DOUBLE_EQ(t.cos_coeff(0), 1.0);
  for (double th : {0.3, 1.7, 4.0}) {
    const double c = std::cos(th), s = std::sin(th);
    EXPECT_NEAR(TrigPoly::monomial(2.5, 3, 5).evaluate(th), 2.5 * c * c * c * std::pow(s, 5), 1e-14);
    EXPECT_NEAR(TrigPoly::monomial(-1.0, 1, 4).evaluate(th), -c * std::pow(s, 4), 1e-14);
  }
}

TEST(TrigPoly, ProductAndIntegral) {
  const TrigPoly a = TrigPoly::monomial(1.0, 1, 1) + TrigPoly::monomial(2.0, 3, 0);
  const TrigPoly b = TrigPoly::monomial(1.0, 0, 3) - TrigPoly::constant(0.5);
  const TrigPoly p = a * b;
  for (double th : {0.1, 2.2, 5.9}) EXPECT_NEAR(p.evaluate(th), a.evaluate(th) * b.evaluate(th), 1e-14);

  // closed-form integrals against a fine trapezoid rule (exact for trig polynomials)
  const int n = 64;
  for (const TrigPoly& t : {p, TrigPoly::monomial(1.0, 4, 2), TrigPoly::monomial(3.0, 0, 6)}) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += t.evaluate(2 * std::numbers::pi * k / n);
    EXPECT_NEAR(t.integral(), sum * 2 * std::numbers::pi / n, 1e-12);
  }
  EXPECT_NEAR(TrigPoly::monomial(1.0, 2, 0).integral(), std::numbers::pi, 1e-15);
}

TEST(PolarSubstitute, Examples) {
  const JetSeries q = u(3) * u(3) + w(3) * w(3);
  const PolarSeries p = polar_substitute(q, 1.0, 1.0);
  EXPECT_TRUE(p[2].is_constant(1e-15));
  EXPECT_DOUBLE_EQ(p[2].cos_coeff(0), 1.0);
  EXPECT_TRUE(p[0].is_constant(0.0) && p[0].cos_coeff(0) == 0.0);

  const PolarSeries lin = polar_substitute(u(3), 0.7, 1.3);
  EXPECT_DOUBLE_EQ(lin[1].cos_coeff(1), 0.7);

  std::mt19937_64 rng(11);
  const JetSeries a = random_series(rng, 6);
  const double b_ = 0.8, a_ = 1.4, r = 0.1, th = 0.7;
  EXPECT_NEAR(polar_substitute(a, b_, a_).evaluate(r, th),
              a.evaluate(b_ * r * std::cos(th), a_ * r * std::sin(th)), 1e-12);
}
