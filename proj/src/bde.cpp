#include "endline/bde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "endline/errors.hpp"

namespace endline {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_line(double angle) {
  angle = std::fmod(angle, kPi);
  if (angle <= -kPi / 2) angle += kPi;
  if (angle > kPi / 2) angle -= kPi;
  return angle;
}

JetSeries compose_blow_up(const JetSeries& a, Axis keep, int order) {
  JetSeries out(order);
  for (int d = 0; d <= a.order(); ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const double c = a.coeff(i, j);
      if (c == 0.0) continue;
      if (keep == Axis::first)
        out.add_to(i + j, j, c);
      else
        out.add_to(i, i + j, c);
    }
  }
  return out;
}

int min_power(const JetSeries& s, Axis keep, double tol) {
  int best = s.order() + 1;
  for (int d = 0; d <= s.order(); ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (std::abs(s.coeff(i, j)) > tol) best = std::min(best, keep == Axis::first ? i : j);
    }
  }
  return best;
}

JetSeries divide_power(const JetSeries& s, Axis keep, int k, int order) {
  JetSeries out(order);
  for (int d = 0; d <= order; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      out.set(i, j, keep == Axis::first ? s.coeff(i + k, j) : s.coeff(i, j + k));
    }
  }
  return out;
}

double horner(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

}  // namespace

BDE bde_regular(const RegularEndJet& jet, int order) {
  const FundamentalForms ff = fundamental_forms_regular(jet, order);
  const JetSeries w = JetSeries::variable(Axis::second, order);
  const JetSeries w2 = w * w;
  return {w * ff.F * ff.g - ff.G * ff.f, w2 * ff.E * ff.g - ff.G * ff.e, w2 * ff.E * ff.f - w * ff.F * ff.e};
}

BDE bde_critical(const CriticalEndJet& jet, int order) {
  jet.validate();
  const FundamentalForms ff = fundamental_forms_critical(jet, order);
  return {ff.F * ff.g - ff.G * ff.f, ff.E * ff.g - ff.G * ff.e, ff.E * ff.f - ff.F * ff.e};
}

std::vector<double> null_directions(double L, double M, double N, std::optional<double> previous) {
  const double scale = std::max({std::abs(L), std::abs(M), std::abs(N)});
  if (scale == 0.0) throw DegenerateQuadratic("L = M = N = 0");
  const double p = N / scale, q = 0.5 * M / scale, r = L / scale;
  const double disc = 4.0 * (q * q - p * r);
  // relative to the size of the terms, which bounds its rounding error
  const double tangency = kTangencyThreshold * 4.0 * (q * q + std::abs(p * r));
  if (disc < -tangency) return {};

  const double mean = 0.5 * (p + r);
  const double rad = std::hypot(0.5 * (p - r), q);
  const double product = p * r - q * q;
  double mu1 = mean + rad, mu2 = mean - rad;
  if (mean >= 0 && mu1 != 0) mu2 = product / mu1;
  if (mean < 0 && mu2 != 0) mu1 = product / mu2;
  const double psi = 0.5 * std::atan2(2.0 * q, p - r);

  std::vector<double> out;
  if (std::abs(disc) <= tangency) {
    out.push_back(wrap_line(std::abs(mu1) <= std::abs(mu2) ? psi : psi + kPi / 2));
  } else {
    const double alpha = std::atan2(std::sqrt(std::max(mu1, 0.0)), std::sqrt(std::max(-mu2, 0.0)));
    out = {wrap_line(psi + alpha), wrap_line(psi - alpha)};
  }
  if (previous && out.size() == 2 &&
      line_angle_between(out[1], *previous) < line_angle_between(out[0], *previous))
    std::swap(out[0], out[1]);
  return out;
}

std::vector<double> direction_fields(const BDE& bde, const ChartPoint& point, std::optional<double> previous) {
  const auto [l, m, n] = bde.at(point.x(), point.y());
  return null_directions(l, m, n, previous);
}

double line_angle_between(double a, double b) {
  const double d = std::abs(wrap_line(a - b));
  return d;
}

// LieCartanField

LieCartanField::LieCartanField(BDE bde, SlopeChart chart) : bde_(std::move(bde)), chart_(chart) {
  if (chart_ == SlopeChart::p)
    c_ = {bde_.L, bde_.M, bde_.N};
  else
    c_ = {bde_.N, bde_.M, bde_.L};
  for (int k = 0; k < 3; ++k) {
    cu_[k] = differentiate(c_[k], Axis::first);
    cw_[k] = differentiate(c_[k], Axis::second);
    cuu_[k] = differentiate(cu_[k], Axis::first);
    cuw_[k] = differentiate(cu_[k], Axis::second);
    cww_[k] = differentiate(cw_[k], Axis::second);
  }
}

LieCartanField::Partials LieCartanField::partials(int k, double u, double w) const {
  return {c_[k].evaluate(u, w),   cu_[k].evaluate(u, w),  cw_[k].evaluate(u, w),
          cuu_[k].evaluate(u, w), cuw_[k].evaluate(u, w), cww_[k].evaluate(u, w)};
}

double LieCartanField::implicit(const Eigen::Vector3d& x) const {
  const double s = x.z();
  return (c_[0].evaluate(x.x(), x.y()) * s + c_[1].evaluate(x.x(), x.y())) * s + c_[2].evaluate(x.x(), x.y());
}

Eigen::Vector3d LieCartanField::gradient(const Eigen::Vector3d& x) const {
  const double s = x.z();
  const Partials a = partials(0, x.x(), x.y()), b = partials(1, x.x(), x.y()), g = partials(2, x.x(), x.y());
  return {a.u * s * s + b.u * s + g.u, a.w * s * s + b.w * s + g.w, 2.0 * a.v * s + b.v};
}

Eigen::Vector3d LieCartanField::operator()(const Eigen::Vector3d& x) const {
  const double s = x.z();
  const Eigen::Vector3d grad = gradient(x);
  const double fu = grad.x(), fw = grad.y(), fs = grad.z();
  if (chart_ == SlopeChart::p) return {fs, s * fs, -(fu + s * fw)};
  return {s * fs, fs, -(s * fu + fw)};
}

Eigen::Matrix3d LieCartanField::jacobian(const Eigen::Vector3d& x) const {
  const double s = x.z();
  const Partials a = partials(0, x.x(), x.y()), b = partials(1, x.x(), x.y()), g = partials(2, x.x(), x.y());
  const double fu = a.u * s * s + b.u * s + g.u;
  const double fw = a.w * s * s + b.w * s + g.w;
  const double fs = 2.0 * a.v * s + b.v;
  const double fss = 2.0 * a.v;
  const double fsu = 2.0 * a.u * s + b.u;
  const double fsw = 2.0 * a.w * s + b.w;
  const double fuu = a.uu * s * s + b.uu * s + g.uu;
  const double fuw = a.uw * s * s + b.uw * s + g.uw;
  const double fww = a.ww * s * s + b.ww * s + g.ww;

  Eigen::Matrix3d J;
  if (chart_ == SlopeChart::p) {
    J << fsu, fsw, fss,
         s * fsu, s * fsw, fs + s * fss,
         -(fuu + s * fuw), -(fuw + s * fww), -(fsu + fw + s * fsw);
  } else {
    J << s * fsu, s * fsw, fs + s * fss,
         fsu, fsw, fss,
         -(s * fuu + fuw), -(s * fuw + fww), -(fu + s * fsu + fsw);
  }
  return J;
}

std::array<std::vector<double>, 3> LieCartanField::axis_polynomials() const {
  const Partials a = partials(0, 0, 0), b = partials(1, 0, 0), g = partials(2, 0, 0);
  std::vector<double> f{g.v, b.v, a.v};
  std::vector<double> fs{b.v, 2.0 * a.v};
  std::vector<double> third;
  if (chart_ == SlopeChart::p)
    third = {-g.u, -(b.u + g.w), -(a.u + b.w), -a.w};
  else
    third = {-g.w, -(g.u + b.w), -(b.u + a.w), -a.u};
  return {f, fs, third};
}

LieCartanField lie_cartan(const BDE& bde, SlopeChart chart) { return LieCartanField(bde, chart); }

std::vector<double> real_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  double scale = 0.0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return {};
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) companion(0, k) = -c[n - 1 - k] / c[n];
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);

  std::vector<double> deriv;
  for (int k = 1; k <= n; ++k) deriv.push_back(k * c[k]);

  std::vector<double> roots;
  for (int k = 0; k < n; ++k) {
    const auto z = solver.eigenvalues()[k];
    if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 8; ++it) {
      const double d = horner(deriv, x);
      if (d == 0.0) break;
      const double step = horner(c, x) / d;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<SuspensionSingularity> suspension_singularities(const LieCartanField& field, double s_min,
                                                            double s_max) {
  const auto polys = field.axis_polynomials();
  double scale = 0.0;
  for (const auto& p : polys)
    for (double c : p) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw NoSingularity("suspension vanishes identically on the slope axis");

  std::vector<double> candidates;
  bool any_nonzero = false;
  for (const auto& p : polys) {
    bool nonzero = false;
    for (double c : p) nonzero = nonzero || std::abs(c) > 1e-13 * scale;
    if (!nonzero) continue;
    any_nonzero = true;
    for (double r : real_roots(p)) candidates.push_back(r);
  }
  if (!any_nonzero) throw NoSingularity("suspension vanishes identically on the slope axis");

  std::vector<SuspensionSingularity> out;
  std::sort(candidates.begin(), candidates.end());
  for (double s : candidates) {
    if (s < s_min || s > s_max) continue;
    const double tol = 1e-9 * scale * std::pow(1.0 + std::abs(s), 3);
    bool common = true;
    for (const auto& p : polys) common = common && std::abs(horner(p, s)) <= tol;
    if (!common) continue;
    if (!out.empty() && std::abs(out.back().slope - s) <= 1e-8 * (1.0 + std::abs(s))) continue;

    SuspensionSingularity sing;
    sing.slope = s;
    sing.chart = field.chart();
    sing.jacobian = field.jacobian(sing.point());
    Eigen::EigenSolver<Eigen::Matrix3d> solver(sing.jacobian);
    const auto& ev = solver.eigenvalues();
    // the eigenvalue of smallest modulus goes last, the others by real part
    std::vector<int> order{0, 1, 2};
    const auto last = std::min_element(order.begin(), order.end(),
                                       [&](int i, int j) { return std::abs(ev[i]) < std::abs(ev[j]); });
    std::iter_swap(last, order.end() - 1);
    if (ev[order[1]].real() < ev[order[0]].real()) std::swap(order[0], order[1]);
    bool complex = false;
    for (int k = 0; k < 3; ++k) {
      sing.eigenvalues[k] = ev[order[k]].real();
      complex = complex || std::abs(ev[order[k]].imag()) > 1e-9 * std::max(1.0, std::abs(ev[order[k]]));
      Eigen::Vector3d vec = solver.eigenvectors().col(order[k]).real();
      if (vec.norm() > 0) vec.normalize();
      sing.eigenvectors[k] = vec;
    }
    const double l1 = sing.eigenvalues[0], l2 = sing.eigenvalues[1];
    const double big = std::max(std::abs(l1), std::abs(l2));
    if (complex)
      sing.type = SingularityType::other;
    else if (std::min(std::abs(l1), std::abs(l2)) <= 1e-9 * big || big == 0.0)
      sing.type = SingularityType::non_hyperbolic;
    else if (l1 * l2 < 0)
      sing.type = SingularityType::hyperbolic_saddle;
    else
      sing.type = SingularityType::other;
    out.push_back(sing);
  }
  if (out.empty()) throw NoSingularity("the suspension has no singular point over the origin");
  return out;
}

CriticalEndJet rotate_saddle_jet(const CriticalEndJet& jet) {
  if (jet.kind != CriticalKind::saddle) throw InvalidJet("rotate_saddle_jet needs a saddle jet");
  jet.validate();
  const double c = 1.0 / std::sqrt(1.0 + jet.a * jet.a);
  const double s = jet.a * c;
  const JetSeries h = linear_substitute(height_function(jet, 4), c, -s, s, c);
  CriticalEndJet out = jet;
  out.a = -h.coeff(1, 1);
  out.b = 0.0;
  out.a30 = 6.0 * h.coeff(3, 0);
  out.a21 = 2.0 * h.coeff(2, 1);
  out.a12 = 2.0 * h.coeff(1, 2);
  out.a03 = 6.0 * h.coeff(0, 3);
  out.a40 = 24.0 * h.coeff(4, 0);
  out.a31 = 6.0 * h.coeff(3, 1);
  out.a22 = 4.0 * h.coeff(2, 2);
  out.a13 = 6.0 * h.coeff(1, 3);
  out.a04 = 24.0 * h.coeff(0, 4);
  return out;
}

BlownUpBDE blow_up(const BDE& bde, Axis keep) {
  const int n = bde.L.order();
  const int big = 2 * n + 2;
  const JetSeries L = compose_blow_up(bde.L, keep, big);
  const JetSeries M = compose_blow_up(bde.M, keep, big);
  const JetSeries N = compose_blow_up(bde.N, keep, big);
  JetSeries nl, nm, nn;
  if (keep == Axis::first) {
    // v = u w, dv = w du + u dw
    const JetSeries u = JetSeries::variable(Axis::first, big);
    const JetSeries w = JetSeries::variable(Axis::second, big);
    nl = L * u * u;
    nm = u * (2.0 * L * w + M);
    nn = (L * w + M) * w + N;
  } else {
    // u = s v, du = v ds + s dv
    const JetSeries s = JetSeries::variable(Axis::first, big);
    const JetSeries v = JetSeries::variable(Axis::second, big);
    nl = L + (M + N * s) * s;
    nm = v * (M + 2.0 * N * s);
    nn = N * v * v;
  }
  const double scale = std::max({nl.max_abs(), nm.max_abs(), nn.max_abs()});
  const double tol = 1e-13 * scale;
  const int k = std::min({min_power(nl, keep, tol), min_power(nm, keep, tol), min_power(nn, keep, tol)});
  const int order = std::max(n - k, 0);
  return {{divide_power(nl, keep, k, order), divide_power(nm, keep, k, order), divide_power(nn, keep, k, order)},
          k};
}

}  // namespace endline
