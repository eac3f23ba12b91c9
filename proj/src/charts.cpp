#include "endline/charts.hpp"

#include <cmath>

#include "endline/errors.hpp"

namespace endline {

namespace {

void add_cubic_quartic(JetSeries& h, double a30, double a21, double a12, double a03, double a40,
                       double a31, double a22, double a13, double a04) {
  h.add_to(3, 0, a30 / 6.0);
  h.add_to(2, 1, a21 / 2.0);
  h.add_to(1, 2, a12 / 2.0);
  h.add_to(0, 3, a03 / 6.0);
  h.add_to(4, 0, a40 / 24.0);
  h.add_to(3, 1, 4.0 * a31 / 24.0);
  h.add_to(2, 2, 6.0 * a22 / 24.0);
  h.add_to(1, 3, 4.0 * a13 / 24.0);
  h.add_to(0, 4, a04 / 24.0);
}

}  // namespace

void CriticalEndJet::validate() const {
  if (kind == CriticalKind::definite && !(a > 0 && b > 0))
    throw InvalidJet("critical definite jet needs a > 0 and b > 0");
  if (kind == CriticalKind::saddle && a == 0) throw InvalidJet("critical saddle jet needs a != 0");
}

JetSeries height_function(const RegularEndJet& jet, int order) {
  JetSeries h(order);
  h.add_to(0, 1, jet.k0);
  h.add_to(2, 0, jet.a / 2.0);
  h.add_to(1, 1, jet.b);
  h.add_to(0, 2, jet.c / 2.0);
  add_cubic_quartic(h, jet.a30, jet.a21, jet.a12, jet.a03, jet.a40, jet.a31, jet.a22, jet.a13, jet.a04);
  return h;
}

JetSeries height_function(const CriticalEndJet& jet, int order) {
  JetSeries h(order);
  if (jet.kind == CriticalKind::definite) {
    h.add_to(2, 0, jet.a * jet.a);
    h.add_to(0, 2, jet.b * jet.b);
  } else {
    h.add_to(1, 1, -jet.a);
    h.add_to(0, 2, 1.0);
  }
  add_cubic_quartic(h, jet.a30, jet.a21, jet.a12, jet.a03, jet.a40, jet.a31, jet.a22, jet.a13, jet.a04);
  return h;
}

RegularChart::RegularChart(const RegularEndJet& jet) : h_(height_function(jet, 4)) {}

Eigen::Vector3d RegularChart::operator()(double u, double w) const {
  if (w == 0.0) throw DivisionByZero("regular chart evaluated at w = 0");
  return {u / w, h_.evaluate(u, w) / w, 1.0 / w};
}

CriticalChart::CriticalChart(const CriticalEndJet& jet) : h_(height_function(jet, 4)) {}

Eigen::Vector3d CriticalChart::operator()(double u, double v) const {
  const double h = h_.evaluate(u, v);
  if (h == 0.0) throw OnEndLocus("critical chart evaluated on h = 0");
  return {u / h, v / h, 1.0 / h};
}

RegularChart build_regular_chart(const RegularEndJet& jet) { return RegularChart(jet); }

CriticalChart build_critical_chart(const CriticalEndJet& jet) {
  jet.validate();
  return CriticalChart(jet);
}

std::vector<Eigen::Vector3d> chart_to_ambient(const std::vector<ChartPoint>& points, const Chart& chart) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    std::visit(
        [&](const auto& c) {
          if (c.region(p.x(), p.y()) == 0.0) throw OnEndLocus("point lies on the end locus");
          out.push_back(c(p.x(), p.y()));
        },
        chart);
  }
  return out;
}

Eigen::Vector4d to_sphere(const Eigen::Vector3d& p) {
  const double s = 1.0 / std::sqrt(p.squaredNorm() + 1.0);
  return {p.x() * s, p.y() * s, p.z() * s, s};
}

Eigen::Vector3d from_sphere(const Eigen::Vector4d& q) {
  if (!(q.w() > 0.0)) throw DivisionByZero("sphere point not in the open upper hemisphere");
  return q.head<3>() / q.w();
}

FundamentalForms fundamental_forms_regular(const RegularEndJet& jet, int order) {
  const JetSeries h = height_function(jet, order + 2);
  const JetSeries u = JetSeries::variable(Axis::first, order);
  const JetSeries w = JetSeries::variable(Axis::second, order);
  const JetSeries hu = differentiate(h, Axis::first).truncated(order);
  const JetSeries hw = differentiate(h, Axis::second).truncated(order);
  const JetSeries k = w * hw - h.truncated(order);

  FundamentalForms ff;
  ff.E = 1.0 + hu * hu;
  ff.F = hu * k - u;
  ff.G = 1.0 + u * u + k * k;
  ff.e = differentiate(differentiate(h, Axis::first), Axis::first).truncated(order);
  ff.f = differentiate(differentiate(h, Axis::first), Axis::second).truncated(order);
  ff.g = differentiate(differentiate(h, Axis::second), Axis::second).truncated(order);
  ff.E_factor = w * w;
  ff.F_factor = ff.E_factor * w;
  ff.G_factor = ff.F_factor * w;
  ff.second_factor = ff.G_factor;
  return ff;
}

FundamentalForms fundamental_forms_critical(const CriticalEndJet& jet, int order) {
  const JetSeries hfull = height_function(jet, order + 2);
  const JetSeries h = hfull.truncated(order);
  const JetSeries u = JetSeries::variable(Axis::first, order);
  const JetSeries v = JetSeries::variable(Axis::second, order);
  const JetSeries hu = differentiate(hfull, Axis::first).truncated(order);
  const JetSeries hv = differentiate(hfull, Axis::second).truncated(order);

  FundamentalForms ff;
  const JetSeries pu = h - u * hu;
  const JetSeries pv = h - v * hv;
  ff.E = pu * pu + (v * v + 1.0) * hu * hu;
  ff.F = -(h * (u * hv + v * hu)) + (1.0 + u * u + v * v) * hu * hv;
  ff.G = pv * pv + (u * u + 1.0) * hv * hv;
  ff.e = -differentiate(differentiate(hfull, Axis::first), Axis::first).truncated(order);
  ff.f = -differentiate(differentiate(hfull, Axis::first), Axis::second).truncated(order);
  ff.g = -differentiate(differentiate(hfull, Axis::second), Axis::second).truncated(order);
  const JetSeries h2 = h * h;
  ff.E_factor = h2 * h2;
  ff.F_factor = ff.E_factor;
  ff.G_factor = ff.E_factor;
  ff.second_factor = ff.E_factor;
  return ff;
}

RawForms reassemble(const FundamentalForms& ff, double u, double w) {
  RawForms r{};
  r.E = ff.E.evaluate(u, w) / ff.E_factor.evaluate(u, w);
  r.F = ff.F.evaluate(u, w) / ff.F_factor.evaluate(u, w);
  r.G = ff.G.evaluate(u, w) / ff.G_factor.evaluate(u, w);
  const double scale = ff.second_factor.evaluate(u, w) * std::sqrt(r.E * r.G - r.F * r.F);
  r.e = ff.e.evaluate(u, w) / scale;
  r.f = ff.f.evaluate(u, w) / scale;
  r.g = ff.g.evaluate(u, w) / scale;
  return r;
}

}  // namespace endline
