#include "endline/returnmap.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "endline/bde.hpp"
#include "endline/classify.hpp"
#include "endline/errors.hpp"

namespace endline {
namespace {

namespace odeint = boost::numeric::odeint;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr int kPolarOrder = 8;

TrigPoly cs(double k, int cos_power, int sin_power) { return TrigPoly::monomial(k, cos_power, sin_power); }

// Truncated product of series in r.
std::vector<TrigPoly> mul(const std::vector<TrigPoly>& x, const std::vector<TrigPoly>& y, int order) {
  std::vector<TrigPoly> out(order + 1);
  for (int i = 0; i < static_cast<int>(x.size()) && i <= order; ++i)
    for (int j = 0; j < static_cast<int>(y.size()) && i + j <= order; ++j) out[i + j] += x[i] * y[j];
  return out;
}

}  // namespace

TrigPoly PolarBDE::n(int k) const {
  double f = 1;
  for (int i = 2; i <= k + 2; ++i) f *= i;
  return N[k + 2] * f;
}

PolarBDE polar_bde(const CriticalEndJet& jet) {
  if (jet.kind != CriticalKind::definite) throw InvalidJet("polar expansion needs a definite critical jet");
  const BDE bde = bde_critical(jet, kPolarOrder);
  const double a = jet.a, b = jet.b, ab = a * b, norm = a * a * b * b;
  const PolarSeries Ls = polar_substitute(bde.L, b, a);
  const PolarSeries Ms = polar_substitute(bde.M, b, a);
  const PolarSeries Ns = polar_substitute(bde.N, b, a);

  // coefficients of dr^2, dr dt and dt^2 by powers of r
  std::vector<TrigPoly> P(kPolarOrder + 3), Q(kPolarOrder + 3), R(kPolarOrder + 3);
  for (int k = 0; k <= kPolarOrder; ++k) {
    P[k] += Ls[k] * cs(a * a, 0, 2) + Ms[k] * cs(ab, 1, 1) + Ns[k] * cs(b * b, 2, 0);
    Q[k + 1] += Ls[k] * cs(2 * a * a, 1, 1) + Ms[k] * (cs(ab, 2, 0) - cs(ab, 0, 2)) - Ns[k] * cs(2 * b * b, 1, 1);
    R[k + 2] += Ls[k] * cs(a * a, 2, 0) - Ms[k] * cs(ab, 1, 1) + Ns[k] * cs(b * b, 0, 2);
  }
  PolarBDE out{jet, {}, {}, {}};
  for (int k = 3; k <= kPolarOrder; ++k) out.L.terms.push_back(P[k] * norm);
  for (int k = 3; k <= kPolarOrder + 1; ++k) out.M.terms.push_back(Q[k] * norm);
  for (int k = 3; k <= kPolarOrder + 2; ++k) out.N.terms.push_back(R[k] * norm);
  return out;
}

double RadialSeries::evaluate(double r, double theta) const {
  return r * r * (d2.evaluate(theta) / 2 + r * (d3.evaluate(theta) / 6 + r * d4.evaluate(theta) / 24));
}

RadialSeries radial_ode_series(const PolarBDE& pbde) {
  const TrigPoly& m0 = pbde.m(0);
  const double scale = std::max(1.0, m0.max_abs_coeff());
  if (!m0.is_constant(1e-12 * scale) || std::abs(m0.cos_coeff(0)) <= 1e-300)
    throw DegenerateM("leading polar coefficient of M is not a nonzero constant");
  const double inv_m0 = 1.0 / m0.cos_coeff(0);
  constexpr int order = 4;

  // 1 / M as a series in r
  std::vector<TrigPoly> inv(order + 1);
  inv[0] = TrigPoly::constant(inv_m0);
  for (int k = 1; k <= order; ++k) {
    TrigPoly acc;
    for (int j = 1; j <= k; ++j) acc += pbde.m(j) * inv[k - j];
    inv[k] = acc * -inv_m0;
  }
  std::vector<TrigPoly> L(order + 1), N(order + 1);
  for (int k = 0; k <= order; ++k) {
    L[k] = pbde.L[k];
    N[k] = pbde.N[k];
  }
  // rho = -(N + L rho^2) / M
  std::vector<TrigPoly> rho(order + 1);
  for (int it = 0; it < order; ++it) {
    std::vector<TrigPoly> num = mul(L, mul(rho, rho, order), order);
    for (int k = 0; k <= order; ++k) num[k] += N[k];
    rho = mul(num, inv, order);
    for (auto& t : rho) t *= -1.0;
  }
  return {rho[2] * 2.0, rho[3] * 6.0, rho[4] * 24.0};
}

ReturnMapReport integrate_q_system(const PolarBDE& pbde, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const RadialSeries d = radial_ode_series(pbde);
  using State = std::array<double, 4>;
  auto rhs = [&](const State& q, State& dq, double t) {
    const double d2 = d.d2.evaluate(t), d3 = d.d3.evaluate(t), d4 = d.d4.evaluate(t);
    dq[0] = 0;
    dq[1] = d2;
    dq[2] = 3 * d2 * q[1] + d3;
    dq[3] = 3 * d2 * q[1] * q[1] + 4 * d2 * q[2] + 6 * d3 * q[1] + d4;
  };
  ReturnMapReport out;
  out.theta.reserve(steps + 1);
  out.q.reserve(steps + 1);
  State q{};
  odeint::runge_kutta4<State> stepper;
  const double dt = kTwoPi / steps;
  out.theta.push_back(0);
  out.q.push_back(q);
  for (int i = 0; i < steps; ++i) {
    stepper.do_step(rhs, q, i * dt, dt);
    out.theta.push_back((i + 1) * dt);
    out.q.push_back(q);
  }
  out.q_end = q;
  const double a = pbde.jet.a, b = pbde.jet.b;
  out.delta_closed = delta(pbde.jet);
  out.pi4_closed = std::numbers::pi * out.delta_closed / (1024 * std::pow(a, 5) * std::pow(b, 5));
  out.pi4_numeric = q[3];
  const double denom = std::max(std::abs(out.pi4_closed), std::abs(out.pi4_numeric));
  out.relative_gap = denom > 0 ? std::abs(out.pi4_numeric - out.pi4_closed) / denom : 0.0;
  return out;
}

std::vector<std::pair<double, double>> poincare_numeric(const CriticalEndJet& jet, const std::vector<double>& radii) {
  if (jet.kind != CriticalKind::definite) throw InvalidJet("return map needs a definite critical jet");
  jet.validate();
  const BDE bde = bde_critical(jet, kExactOrder);
  const JetSeries h = height_function(jet, 4);
  const double a = jet.a, b = jet.b, ab = a * b;

  using State = std::array<double, 1>;
  std::vector<std::pair<double, double>> out;
  for (double r0 : radii) {
    if (!(r0 > 0)) throw LeftDomain("starting radius must be positive");
    double q_sign = 0;
    auto rhs = [&](const State& x, State& dx, double t) {
      const double r = x[0], c = std::cos(t), s = std::sin(t);
      const double u = b * r * c, v = a * r * s;
      if (!(r > 0) || h.evaluate(u, v) <= 0) throw LeftDomain("trajectory left the finite region");
      const auto [L, M, N] = bde.at(u, v);
      const double P = a * a * s * s * L + ab * s * c * M + b * b * c * c * N;
      const double Q = 2 * a * a * r * s * c * L + ab * r * (c * c - s * s) * M - 2 * b * b * r * s * c * N;
      const double R = a * a * r * r * c * c * L - ab * r * r * s * c * M + b * b * r * r * s * s * N;
      const double disc = Q * Q - 4 * P * R;
      if (disc < 0 || Q == 0) throw LeftDomain("radial equation lost its real root");
      const double sg = Q > 0 ? 1.0 : -1.0;
      if (q_sign == 0) q_sign = sg;
      if (sg != q_sign) throw LeftDomain("root continuation changed branch");
      dx[0] = -2 * R / (Q + sg * std::sqrt(disc));
    };
    State x{r0};
    auto stepper = odeint::make_controlled(1e-15, 1e-14, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_adaptive(stepper, rhs, x, 0.0, kTwoPi, 1e-3);
    out.emplace_back(r0, x[0]);
  }
  return out;
}

ReturnMapReport returnmap_report(const CriticalEndJet& jet, int steps, const std::vector<double>& radii) {
  ReturnMapReport out = integrate_q_system(polar_bde(jet), steps);
  out.poincare_samples = poincare_numeric(jet, radii);
  return out;
}

}  // namespace endline
