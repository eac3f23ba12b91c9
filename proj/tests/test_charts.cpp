#include <gtest/gtest.h>

#include <cmath>

#include "endline/charts.hpp"
#include "endline/errors.hpp"
#include "support.hpp"

using namespace endline;

namespace {

// Fourth-order central differences of the explicit embedding.
template <class Map>
RawForms finite_difference_forms(const Map& x, double u, double w, double h) {
  auto d_u = [&](auto f, double a, double b) -> Eigen::Vector3d {
    return (-f(a + 2 * h, b) + 8 * f(a + h, b) - 8 * f(a - h, b) + f(a - 2 * h, b)) / (12 * h);
  };
  auto d_w = [&](auto f, double a, double b) -> Eigen::Vector3d {
    return (-f(a, b + 2 * h) + 8 * f(a, b + h) - 8 * f(a, b - h) + f(a, b - 2 * h)) / (12 * h);
  };
  auto X = [&](double a, double b) -> Eigen::Vector3d { return x(a, b); };
  auto Xu = [&](double a, double b) -> Eigen::Vector3d { return d_u(X, a, b); };
  auto Xw = [&](double a, double b) -> Eigen::Vector3d { return d_w(X, a, b); };
  const Eigen::Vector3d xu = Xu(u, w);
  const Eigen::Vector3d xw = Xw(u, w);
  const Eigen::Vector3d xuu =
      (-X(u + 2 * h, w) + 16 * X(u + h, w) - 30 * X(u, w) + 16 * X(u - h, w) - X(u - 2 * h, w)) / (12 * h * h);
  const Eigen::Vector3d xww =
      (-X(u, w + 2 * h) + 16 * X(u, w + h) - 30 * X(u, w) + 16 * X(u, w - h) - X(u, w - 2 * h)) / (12 * h * h);
  const Eigen::Vector3d xuw = d_w(Xu, u, w);
  const Eigen::Vector3d n = xu.cross(xw).normalized();
  return {xu.dot(xu), xu.dot(xw), xw.dot(xw), xuu.dot(n), xuw.dot(n), xww.dot(n)};
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

void expect_forms_close(const RawForms& s, const RawForms& fd, double tol) {
  EXPECT_LT(rel(s.E, fd.E), tol);
  EXPECT_LT(rel(s.F, fd.F), tol);
  EXPECT_LT(rel(s.G, fd.G), tol);
  // the second form is defined up to the orientation of the normal
  const double sign = (s.e * fd.e + s.f * fd.f + s.g * fd.g) >= 0 ? 1.0 : -1.0;
  EXPECT_LT(rel(s.e, sign * fd.e), tol);
  EXPECT_LT(rel(s.f, sign * fd.f), tol);
  EXPECT_LT(rel(s.g, sign * fd.g), tol);
}

}  // namespace

TEST(Charts, RegularChartExamples) {
  RegularEndJet zero;
  EXPECT_TRUE(build_regular_chart(zero)(1, 1).isApprox(Eigen::Vector3d(1, 0, 1)));
  RegularEndJet j;
  j.a = 2;
  EXPECT_TRUE(build_regular_chart(j)(1, 1).isApprox(Eigen::Vector3d(1, 1, 1)));
  EXPECT_THROW(build_regular_chart(j)(1, 0), DivisionByZero);

  std::mt19937_64 rng(3);
  const RegularEndJet r = fixtures::random_regular_jet(rng);
  const double u = 0.3, w = 0.1;
  const double h = r.k0 * w + r.a * u * u / 2 + r.b * u * w + r.c * w * w / 2 +
                   (r.a30 * u * u * u + 3 * r.a21 * u * u * w + 3 * r.a12 * u * w * w + r.a03 * w * w * w) / 6 +
                   (r.a40 * std::pow(u, 4) + 4 * r.a31 * u * u * u * w + 6 * r.a22 * u * u * w * w +
                    4 * r.a13 * u * w * w * w + r.a04 * std::pow(w, 4)) / 24;
  EXPECT_TRUE(build_regular_chart(r)(u, w).isApprox(Eigen::Vector3d(u / w, h / w, 1 / w), 1e-14));
}

TEST(Charts, CriticalChartExamples) {
  CriticalEndJet d;
  d.a = d.b = 1;
  EXPECT_TRUE(build_critical_chart(d)(1, 1).isApprox(Eigen::Vector3d(0.5, 0.5, 0.5)));
  CriticalEndJet s;
  s.kind = CriticalKind::saddle;
  s.a = 1;
  EXPECT_TRUE(build_critical_chart(s)(0, 1).isApprox(Eigen::Vector3d(0, 1, 1)));
  EXPECT_THROW(build_critical_chart(s)(1, 0), OnEndLocus);

  CriticalEndJet bad;
  bad.a = -1;
  EXPECT_THROW(build_critical_chart(bad), InvalidJet);

  std::mt19937_64 rng(4);
  const CriticalEndJet r = fixtures::random_definite_jet(rng);
  const double u = 0.2, v = 0.1;
  const double h = r.a * r.a * u * u + r.b * r.b * v * v +
                   (r.a30 * u * u * u + 3 * r.a21 * u * u * v + 3 * r.a12 * u * v * v + r.a03 * v * v * v) / 6 +
                   (r.a40 * std::pow(u, 4) + 4 * r.a31 * u * u * u * v + 6 * r.a22 * u * u * v * v +
                    4 * r.a13 * u * v * v * v + r.a04 * std::pow(v, 4)) / 24;
  EXPECT_TRUE(build_critical_chart(r)(u, v).isApprox(Eigen::Vector3d(u / h, v / h, 1 / h), 1e-14));
}

TEST(Charts, SphereProjection) {
  EXPECT_TRUE(to_sphere({0, 0, 0}).isApprox(Eigen::Vector4d(0, 0, 0, 1)));
  EXPECT_TRUE(to_sphere({1, 0, 0}).isApprox(Eigen::Vector4d(1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0))));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Vector3d p(d(rng), d(rng), d(rng));
    EXPECT_LT((from_sphere(to_sphere(p)) - p).norm(), 1e-12 * std::max(1.0, p.norm()));
    EXPECT_NEAR(to_sphere(p).norm(), 1.0, 1e-15);
  }
  RegularEndJet j;
  j.a = 1;
  EXPECT_THROW(chart_to_ambient({ChartPoint(0.1, 0.0)}, Chart(build_regular_chart(j))), OnEndLocus);
  const auto pts = chart_to_ambient({ChartPoint(0.1, 0.5)}, Chart(build_regular_chart(j)));
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR(pts[0].z(), 2.0, 1e-15);
}

TEST(FundamentalForms, RegularClosedForms) {
  const FundamentalForms ff = fundamental_forms_regular(RegularEndJet{});
  EXPECT_EQ(fixtures::max_coeff_diff(ff.E, JetSeries::constant(1, 6)), 0.0);
  EXPECT_EQ(fixtures::max_coeff_diff(ff.F, -JetSeries::variable(Axis::first, 6)), 0.0);
  const JetSeries u = JetSeries::variable(Axis::first, 6);
  EXPECT_EQ(fixtures::max_coeff_diff(ff.G, 1.0 + u * u), 0.0);

  RegularEndJet j;
  j.a = 1.7;
  EXPECT_DOUBLE_EQ(fundamental_forms_regular(j).e.coeff(0, 0), 1.7);
}

TEST(FundamentalForms, CriticalClosedForms) {
  CriticalEndJet j;
  j.a = 1.3;
  j.b = 0.8;
  const FundamentalForms ff = fundamental_forms_critical(j);
  EXPECT_EQ(ff.E.coeff(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(ff.e.coeff(0, 0), -2 * 1.3 * 1.3);
  EXPECT_DOUBLE_EQ(ff.g.coeff(0, 0), -2 * 0.8 * 0.8);
}

TEST(FundamentalForms, RegularMatchFiniteDifferences) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const RegularEndJet j = fixtures::random_regular_jet(rng);
    const FundamentalForms ff = fundamental_forms_regular(j, kExactOrder);
    const RegularChart chart = build_regular_chart(j);
    for (auto [u, w] : {std::pair{0.05, 0.05}, std::pair{-0.1, 0.2}, std::pair{0.3, 0.4}}) {
      const RawForms s = reassemble(ff, u, w);
      expect_forms_close(s, finite_difference_forms(chart, u, w, 2e-4), 1e-6);
      EXPECT_GT(s.E * s.G - s.F * s.F, 0.0);
    }
  }
}

TEST(FundamentalForms, CriticalMatchFiniteDifferences) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const CriticalEndJet j = t % 2 ? fixtures::random_definite_jet(rng) : fixtures::random_saddle_jet(rng);
    const FundamentalForms ff = fundamental_forms_critical(j, kExactOrder);
    const CriticalChart chart = build_critical_chart(j);
    int checked = 0;
    for (auto [u, v] : {std::pair{0.05, 0.03}, std::pair{-0.04, 0.07}, std::pair{0.02, -0.06}}) {
      if (chart.region(u, v) <= 1e-4) continue;
      ++checked;
      const RawForms s = reassemble(ff, u, v);
      expect_forms_close(s, finite_difference_forms(chart, u, v, 1e-4), 1e-6);
      EXPECT_GT(s.E * s.G - s.F * s.F, 0.0);
    }
    if (j.kind == CriticalKind::definite) EXPECT_EQ(checked, 3);
  }
}

TEST(FundamentalForms, FactorBookkeeping) {
  std::mt19937_64 rng(14);
  const RegularEndJet j = fixtures::random_regular_jet(rng);
  const FundamentalForms ff = fundamental_forms_regular(j, kExactOrder);
  const double u = 0.1, w = 0.3;
  const JetSeries h = height_function(j, 4);
  const double hu = differentiate(h, Axis::first).evaluate(u, w);
  const RawForms r = reassemble(ff, u, w);
  EXPECT_NEAR(r.E, (1 + hu * hu) / (w * w), 1e-12 * r.E);
}
