#include "endline/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "endline/classify.hpp"
#include "endline/errors.hpp"
#include "endline/returnmap.hpp"
#include "endline/trace.hpp"

namespace endline {

namespace sample {

RegularEndJet regular_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  RegularEndJet j;
  j.k0 = d(rng); j.a = d(rng); j.b = d(rng); j.c = d(rng);
  j.a30 = d(rng); j.a21 = d(rng); j.a12 = d(rng); j.a03 = d(rng);
  j.a40 = d(rng); j.a31 = d(rng); j.a22 = d(rng); j.a13 = d(rng); j.a04 = d(rng);
  return j;
}

CriticalEndJet definite_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::uniform_real_distribution<double> ab(0.5, 2.0);
  CriticalEndJet j;
  j.kind = CriticalKind::definite;
  j.a = ab(rng); j.b = ab(rng);
  j.a30 = d(rng); j.a21 = d(rng); j.a12 = d(rng); j.a03 = d(rng);
  j.a40 = d(rng); j.a31 = d(rng); j.a22 = d(rng); j.a13 = d(rng); j.a04 = d(rng);
  return j;
}

CriticalEndJet saddle_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  CriticalEndJet j;
  j.kind = CriticalKind::saddle;
  j.a = mag(rng) * (d(rng) < 0 ? -1.0 : 1.0);
  j.b = 0.0;
  j.a30 = d(rng); j.a21 = d(rng); j.a12 = d(rng); j.a03 = d(rng);
  j.a40 = d(rng); j.a31 = d(rng); j.a22 = d(rng); j.a13 = d(rng); j.a04 = d(rng);
  return j;
}

}  // namespace sample

namespace closed_form {
namespace {

JetSeries series(std::initializer_list<std::tuple<int, int, double>> terms) {
  JetSeries s(3);
  for (auto [i, k, v] : terms) s.set(i, k, v);
  return s;
}

}  // namespace

BDE regular_bde(const RegularEndJet& j) {
  return {series({{0, 0, -j.b}, {1, 0, -j.a21}, {0, 1, -j.a12}, {1, 1, -(j.c + j.a22)},
                  {2, 0, -(j.b + j.a31 / 2)}, {0, 2, -j.a13 / 2}}),
          series({{0, 0, -j.a}, {1, 0, -j.a30}, {0, 1, -j.a21}, {2, 0, -(2 * j.a + j.a40) / 2}, {1, 1, -j.a31},
                  {0, 2, (2 * j.c - j.a22) / 2}}),
          series({{1, 1, j.a}, {0, 2, j.b}, {2, 1, j.a30}, {1, 2, 2 * j.a21}, {0, 3, j.a12}})};
}

BDE saddle_bde(const CriticalEndJet& j, bool reference_n) {
  const double a = j.a;
  return {series({{2, 0, -a * a * a}, {1, 1, 2 * a * a}, {1, 2, -3 * a * j.a12},
                  {2, 1, 2 * a * a * j.a12 - 3 * a * j.a21 - 2 * j.a30}, {3, 0, a * j.a30 + 2 * a * a * j.a21},
                  {0, 3, 2 * j.a12 + a * j.a03}}),
          series({{0, 2, -2 * a * a}, {1, 2, 4 * j.a30 - a * a * j.a12}, {2, 1, a * a * j.a21 - 2 * a * j.a30},
                  {3, 0, a * a * j.a30}, {0, 3, 2 * a * j.a12 - a * a * j.a03 + 4 * j.a21}}),
          series({{0, 2, a * a * a}, {1, 2, -2 * a * (a * j.a21 + j.a30)},
                  {0, 3, reference_n ? -2 * a * j.a21 : -2 * a * (a * j.a12 + j.a21)}})};
}

double l0(const CriticalEndJet& j, double t) {
  const double a = j.a, b = j.b, c = std::cos(t), s = std::sin(t);
  return 2 * std::pow(a, 5) * std::pow(b, 5) *
         (j.a30 * b * b * b * c * c * s + j.a21 * a * b * b * (2 * c - 3 * c * c * c) +
          j.a12 * a * a * b * (s - 3 * c * c * s) + j.a03 * a * a * a * (c * c * c - c));
}

double m1(const CriticalEndJet& j, double t) {
  const double a = j.a, b = j.b, c = std::cos(t), s = std::sin(t);
  return -4 * std::pow(b, 5) * std::pow(a, 5) *
         ((j.a30 * b * b * b + j.a12 * b * a * a) * c + (j.a21 * b * b * a + j.a03 * a * a * a) * s);
}

double n0(const CriticalEndJet& j, double t, bool reference) {
  const double a = j.a, b = j.b, c = std::cos(t), s = std::sin(t);
  return 4 * std::pow(b, 5) * std::pow(a, 5) *
         ((-3 * j.a21 * b * b * a + j.a03 * a * a * a) * c * c * c +
          (j.a30 * b * b * b - 3 * j.a12 * b * a * a) * s * c * c + (-j.a03 * a * a * a + 2 * j.a21 * b * b * a) * c +
          (reference ? 4 : 1) * b * a * a * j.a12 * s);
}

double m0(const CriticalEndJet& j) { return -8 * std::pow(j.a, 7) * std::pow(j.b, 7); }

}  // namespace closed_form

double max_coeff_error(const JetSeries& a, const JetSeries& b, int max_degree) {
  double m = 0.0;
  for (int d = 0; d <= max_degree; ++d)
    for (int k = 0; k <= d; ++k) {
      const double x = d <= a.order() ? a.coeff(d - k, k) : 0.0;
      const double y = d <= b.order() ? b.coeff(d - k, k) : 0.0;
      m = std::max(m, std::abs(x - y));
    }
  return m;
}

Eigen::Matrix3d fd_jacobian(const LieCartanField& field, const Eigen::Vector3d& x, double h) {
  Eigen::Matrix3d J;
  for (int c = 0; c < 3; ++c) {
    const double step = c < 2 ? h : std::max(h, 0.1 * std::abs(x[c]));
    const Eigen::Vector3d e = step * Eigen::Vector3d::Unit(c);
    J.col(c) = (-field(x + 2 * e) + 8 * field(x + e) - 8 * field(x - e) + field(x - 2 * e)) / (12 * step);
  }
  return J;
}

std::array<double, 2> principal_eigenvalues(const Eigen::Matrix3d& jacobian) {
  const Eigen::Vector3cd ev = jacobian.eigenvalues();
  std::array<std::complex<double>, 3> v = {ev[0], ev[1], ev[2]};
  std::sort(v.begin(), v.end(), [](auto x, auto y) { return std::abs(x) > std::abs(y); });
  std::array<double, 2> out = {v[0].real(), v[1].real()};
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> power_fit(const std::vector<ChartPoint>& points, const std::vector<int>& powers) {
  Eigen::MatrixXd A(points.size(), powers.size());
  Eigen::VectorXd y(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < powers.size(); ++k) A(i, k) = std::pow(points[i].x(), powers[k]);
    y[i] = points[i].y();
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  return {c.data(), c.data() + c.size()};
}

double inflexion_separatrix_quadratic(const RegularEndJet& jet) {
  const LieCartanField field(bde_regular(jet, kExactOrder), SlopeChart::p);
  SeparatrixOptions opt;
  opt.max_length = 0.3;
  std::vector<ChartPoint> near;
  for (const auto& s : suspension_singularities(field, -1e-6, 1e-6)) {
    for (const Trajectory& t : trace_separatrices(s, field, opt)) {
      double wmax = 0;
      for (const auto& p : t.points) wmax = std::max(wmax, std::abs(p.y()));
      if (wmax < 1e-10) continue;
      for (const auto& p : t.points)
        if (std::abs(p.x()) < 0.05) near.push_back(p);
    }
  }
  if (near.size() < 10) throw NoSingularity("no curved separatrix at the inflexion");
  return power_fit(near, {2, 3, 4})[0];
}

double cubic_contact_coefficient(const RegularEndJet& jet) {
  const BDE bde = bde_regular(jet, kExactOrder);
  TraceOptions opt;
  opt.region = [](double, double w) { return w; };
  opt.initial_step = 1e-5;
  opt.max_step = 2e-4;
  opt.box = 0.02;
  opt.lift_threshold = 1e-24;
  const auto fit = [&](double w0) {
    double best = 0;
    for (Branch br : {Branch::plus, Branch::minus}) {
      const Trajectory t = trace_field(bde, ChartPoint(0, w0), br, opt);
      std::vector<ChartPoint> window;
      for (const auto& p : t.points)
        if (std::abs(p.x()) >= 1e-3 && std::abs(p.x()) <= 1e-2) window.emplace_back(p.x(), p.y() - w0);
      if (window.size() < 10) continue;
      // the seed slope adds a linear term
      const double c = power_fit(window, {1, 2, 3})[2];
      if (std::abs(c) > std::abs(best)) best = c;
    }
    return best;
  };
  // Shrink the seed height while the leaf stays the curved one.
  double c = fit(1e-6);
  for (double w0 : {3e-7, 1e-7}) {
    const double next = fit(w0);
    if (std::abs(next) < 0.5 * std::abs(c)) break;
    c = next;
  }
  return c;
}

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

struct Suite {
  std::vector<std::pair<std::string, double>> checks;
  std::function<std::vector<double>(std::mt19937_64&)> trial;
};

std::vector<double> coeffs_trial(std::mt19937_64& rng) {
  const RegularEndJet r = sample::regular_jet(rng);
  const BDE br = bde_regular(r);
  const BDE cr = closed_form::regular_bde(r);
  const double regular = std::max({max_coeff_error(br.L, cr.L, 2), max_coeff_error(br.M, cr.M, 2),
                                   max_coeff_error(br.N, cr.N, 3)});

  const CriticalEndJet s = sample::saddle_jet(rng);
  const BDE bs = bde_critical(s);
  const BDE cs = closed_form::saddle_bde(s);
  const double saddle = std::max(
      {max_coeff_error(bs.L, cs.L, 3), max_coeff_error(bs.M, cs.M, 3), max_coeff_error(bs.N, cs.N, 3)});

  // pointwise product of the fundamental forms: L = m (F g - G f), M = m (E g - G e), N = m (E f - F e)
  auto product_error = [](const BDE& b, const FundamentalForms& ff, double u, double w, double factor) {
    const RawForms f = reassemble(ff, u, w);
    const double m = std::pow(factor, 8) * std::sqrt(f.E * f.G - f.F * f.F);
    const auto [L, M, N] = b.at(u, w);
    return std::max({rel(L, m * (f.F * f.g - f.G * f.f)), rel(M, m * (f.E * f.g - f.G * f.e)),
                     rel(N, m * (f.E * f.f - f.F * f.e))});
  };
  const double product_regular =
      product_error(bde_regular(r, kExactOrder), fundamental_forms_regular(r, kExactOrder), 0.2, 0.3, 0.3);
  const CriticalEndJet d = sample::definite_jet(rng);
  const double u = 0.05, v = -0.04;
  const double product_critical = product_error(bde_critical(d, kExactOrder),
                                                fundamental_forms_critical(d, kExactOrder), u, v,
                                                height_function(d, 4).evaluate(u, v));
  return {regular, saddle, product_regular, product_critical};
}

std::vector<double> polar_trial(std::mt19937_64& rng) {
  const CriticalEndJet j = sample::definite_jet(rng);
  const PolarBDE p = polar_bde(j);
  const TrigPoly n0 = p.n(0);
  double scale = 1;
  std::array<double, 3> err{};
  for (int k = 0; k < 32; ++k) {
    const double t = 2 * std::numbers::pi * k / 32;
    scale = std::max({scale, std::abs(closed_form::l0(j, t)), std::abs(closed_form::m1(j, t)),
                      std::abs(closed_form::n0(j, t))});
    err[0] = std::max(err[0], std::abs(p.l(0).evaluate(t) - closed_form::l0(j, t)));
    err[1] = std::max(err[1], std::abs(p.m(1).evaluate(t) - closed_form::m1(j, t)));
    err[2] = std::max(err[2], std::abs(n0.evaluate(t) - closed_form::n0(j, t)));
  }
  const double m0 = closed_form::m0(j);
  double m0_err = 0;
  for (int k = 0; k < 32; ++k) m0_err = std::max(m0_err, std::abs(p.m(0).evaluate(2 * std::numbers::pi * k / 32) - m0));
  return {err[0] / scale, err[1] / scale, err[2] / scale, m0_err / std::abs(m0)};
}

std::vector<double> eigen_trial(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1, 1), mag(0.5, 2);
  auto signed_mag = [&] { return mag(rng) * (d(rng) < 0 ? -1 : 1); };

  RegularEndJet inflexion = sample::regular_jet(rng);
  inflexion.a = 0;
  inflexion.b = signed_mag();
  inflexion.a30 = signed_mag();
  const LieCartanField fi(bde_regular(inflexion, kExactOrder), SlopeChart::p);
  const auto ei = principal_eigenvalues(fd_jacobian(fi, {0, 0, 0}));
  const double a30 = inflexion.a30;
  double inflexion_err = std::max(rel(ei[0], -std::abs(a30)), rel(ei[1], std::abs(a30)));
  inflexion_err = std::max(inflexion_err, fi({0, 0, 0}).norm());

  RegularEndJet umbilic = sample::regular_jet(rng);
  umbilic.a = umbilic.b = 0;
  const LieCartanField fu(bde_regular(umbilic, kExactOrder), SlopeChart::p);
  std::vector<double> slopes = {0.0};
  const double disc = umbilic.a21 * umbilic.a21 - umbilic.a12 * umbilic.a30;
  if (disc > 0)
    for (double sg : {-1.0, 1.0}) {
      const double p = (-umbilic.a21 + sg * std::sqrt(disc)) / umbilic.a12;
      if (std::abs(p) < 10) slopes.push_back(p);
    }
  double umbilic_err = 0;
  for (double p : slopes) {
    const double l1 = -(umbilic.a30 + 3 * umbilic.a21 * p + 2 * umbilic.a12 * p * p);
    const double l2 = umbilic.a30 + 4 * umbilic.a21 * p + 3 * umbilic.a12 * p * p;
    const auto got = principal_eigenvalues(fd_jacobian(fu, {0, 0, p}));
    const double lo = std::min(l1, l2), hi = std::max(l1, l2);
    umbilic_err = std::max({umbilic_err, rel(got[0], lo), rel(got[1], hi), fu({0, 0, p}).norm()});
  }

  const CriticalEndJet s = sample::saddle_jet(rng);
  BlownUpBDE blown = blow_up(bde_critical(s, kExactOrder), Axis::first);
  for (JetSeries* c : {&blown.bde.L, &blown.bde.M, &blown.bde.N}) *c *= 1.0 / s.a;
  const LieCartanField fs(blown.bde, SlopeChart::q);
  const double a2 = s.a * s.a;
  const std::array<std::pair<double, std::array<double, 2>>, 3> want = {{
      {0.0, {-2 * a2, 3 * a2}},
      {2 * s.a / s.a30, {-2 * a2, 2 * a2}},
      {6 * s.a / s.a30, {-2 * a2, 6 * a2}},
  }};
  double saddle_err = 0;
  for (const auto& [q, pair] : want) {
    const auto got = principal_eigenvalues(fd_jacobian(fs, {0, 0, q}));
    saddle_err = std::max({saddle_err, rel(got[0], pair[0]), rel(got[1], pair[1])});
  }
  return {inflexion_err, umbilic_err, saddle_err};
}

std::vector<double> returnmap_trial(std::mt19937_64& rng) {
  const CriticalEndJet j = sample::definite_jet(rng);
  const ReturnMapReport r = integrate_q_system(polar_bde(j), kDefaultQSteps);
  const double flat = std::max({std::abs(r.q_end[0]), std::abs(r.q_end[1]), std::abs(r.q_end[2])});
  return {flat, r.relative_gap};
}

std::vector<double> separatrix_trial(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1, 1), mag(0.5, 2);
  auto signed_mag = [&] { return mag(rng) * (d(rng) < 0 ? -1 : 1); };
  RegularEndJet inflexion;
  inflexion.b = signed_mag();
  inflexion.a30 = signed_mag();
  inflexion.a21 = d(rng);
  inflexion.a12 = d(rng);
  const double want2 = -inflexion.a30 / (2 * inflexion.b);
  const double quadratic = std::abs(inflexion_separatrix_quadratic(inflexion) - want2) / std::abs(want2);

  RegularEndJet contact;
  contact.b = signed_mag();
  contact.a40 = signed_mag();
  const double want3 = -contact.a40 / (6 * contact.b);
  const double cubic = std::abs(cubic_contact_coefficient(contact) - want3) / std::abs(want3);
  return {quadratic, cubic};
}

const std::map<std::string, Suite, std::less<>>& suites() {
  static const std::map<std::string, Suite, std::less<>> table = {
      {"coeffs",
       {{{"regular BDE closed form", 1e-10},
         {"saddle BDE closed form", 1e-10},
         {"regular BDE form product", 1e-10},
         {"critical BDE form product", 1e-10}},
        coeffs_trial}},
      {"polar", {{{"l0", 1e-9}, {"m1", 1e-9}, {"n0", 1e-9}, {"m0 constant", 1e-15}}, polar_trial}},
      {"eigen",
       {{{"inflexion saddle", 1e-8}, {"umbilic-inflexion", 1e-8}, {"saddle blow-up", 1e-8}}, eigen_trial}},
      {"returnmap", {{{"q1..q3 flat", 1e-7}, {"q4 against closed law", 1e-5}}, returnmap_trial}},
      {"separatrix", {{{"inflexion quadratic", 0.02}, {"cubic contact", 0.05}}, separatrix_trial}},
  };
  return table;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : suites()) n.push_back(k);
    return n;
  }();
  return names;
}

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ENDLINE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

SuiteResult run_suite(std::string_view name, int trials, std::uint64_t seed) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw ParseError("unknown suite '" + std::string(name) + "'");
  const Suite& suite = it->second;

  SuiteResult out;
  out.suite = std::string(name);
  out.trials = trials;
  out.seed = seed;
  for (const auto& [check, threshold] : suite.checks) out.checks.push_back({check, 0.0, threshold});

  std::mutex lock;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < trials; k = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(k)};
      std::mt19937_64 rng(seq);
      std::vector<double> errors;
      try {
        errors = suite.trial(rng);
      } catch (const Error&) {
        errors.assign(suite.checks.size(), std::numeric_limits<double>::infinity());
      }
      const std::lock_guard guard(lock);
      for (std::size_t c = 0; c < errors.size(); ++c) {
        double& m = out.checks[c].max_error;
        m = std::isnan(errors[c]) ? std::numeric_limits<double>::infinity() : std::max(m, errors[c]);
      }
    }
  };
  const unsigned n = std::min<unsigned>(thread_count(), std::max(1, trials));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace endline
