#include "endline/trace.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "endline/errors.hpp"

namespace endline {
namespace {

namespace odeint = boost::numeric::odeint;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

double relative_discriminant(double L, double M, double N) {
  const double s = std::abs(L) + std::abs(M) + std::abs(N);
  return s == 0 ? 0.0 : (M * M - 4 * L * N) / (s * s);
}

double line_angle(const Vec2& d) {
  double t = std::atan2(d.y(), d.x());
  if (t > std::numbers::pi / 2) t -= std::numbers::pi;
  if (t <= -std::numbers::pi / 2) t += std::numbers::pi;
  return t;
}

// Unit direction of the root line nearest to `ref`, oriented along it.
std::optional<Vec2> follow(const BDE& bde, const Vec2& x, const Vec2& ref) {
  const auto [L, M, N] = bde.at(x.x(), x.y());
  if (L == 0 && M == 0 && N == 0) return std::nullopt;
  const auto dirs = null_directions(L, M, N, line_angle(ref));
  if (dirs.empty()) return std::nullopt;
  Vec2 d(std::cos(dirs[0]), std::sin(dirs[0]));
  if (d.dot(ref) < 0) d = -d;
  return d;
}

// Root of g along path(t), t in [0, 1], with g(path(0)) > 0 >= g(path(1)).
template <class G, class Path>
Vec2 bisect_path(const G& g, const Path& path) {
  double lo = 0, hi = 1;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (lo + hi);
    (g(path(m)) > 0 ? lo : hi) = m;
  }
  return path(hi);
}

struct Arc {
  std::vector<Vec2> points;
  Termination end = Termination::step_limit;
};

class Tracer {
public:
  Tracer(const BDE& bde, const TraceOptions& opt)
      : bde_(bde), opt_(opt), lift_p_(bde, SlopeChart::p), lift_q_(bde, SlopeChart::q) {}

  Arc run(const Vec2& seed, Vec2 d) const {
    Arc arc;
    arc.points.push_back(seed);
    Vec2 x = seed;
    double h = opt_.initial_step, length = 0;
    int steps = 0;
    while (steps < opt_.max_steps && length < opt_.max_length) {
      const auto [L, M, N] = bde_.at(x.x(), x.y());
      if ((L != 0 || M != 0 || N != 0) && std::abs(relative_discriminant(L, M, N)) < opt_.lift_threshold) {
        if (auto end = lifted(arc, x, d, h, steps, length)) {
          arc.end = *end;
          return arc;
        }
        continue;
      }
      const auto k1 = follow(bde_, x, d);
      if (!k1) {
        arc.end = Termination::singular_point;
        return arc;
      }
      std::optional<Vec2> dn;
      double turning = 0;
      const auto next = rk_step(x, *k1, h);
      bool ok = next.has_value();
      const Vec2 xn = ok ? *next : x;
      if (ok) ok = static_cast<bool>(dn = follow(bde_, xn, *k1));
      if (ok) {
        turning = std::acos(std::clamp(k1->dot(*dn), -1.0, 1.0));
        ok = turning <= std::min(0.1, 0.5 * root_separation(xn)) && chord_residual(bde_, x, xn) <= opt_.residual_tol;
      }
      if (!ok) {
        h /= 2;
        if (h < opt_.min_step) {
          const auto [l, m, n] = bde_.at(x.x(), x.y());
          if (std::abs(relative_discriminant(l, m, n)) < 1e-6 || near_singular(x)) {
            arc.end = Termination::singular_point;
            return arc;
          }
          throw StepCollapse("step size fell below the floor");
        }
        continue;
      }
      ++steps;
      const Vec2 k1v = *k1;
      if (auto end = terminate(arc, x, xn, [&](double t) { return rk_step(x, k1v, t * h).value_or(x + t * (xn - x)); })) {
        arc.end = *end;
        return arc;
      }
      arc.points.push_back(xn);
      length += (xn - x).norm();
      x = xn;
      d = *dn;
      if (turning < 0.01) h = std::min(2 * h, opt_.max_step);
    }
    arc.end = Termination::step_limit;
    return arc;
  }

private:
  // Angle between the two null lines; pi/2 when there is only one.
  double root_separation(const Vec2& x) const {
    const auto [L, M, N] = bde_.at(x.x(), x.y());
    if (L == 0 && M == 0 && N == 0) return std::numbers::pi / 2;
    const auto dirs = null_directions(L, M, N);
    return dirs.size() == 2 ? line_angle_between(dirs[0], dirs[1]) : std::numbers::pi / 2;
  }

  bool near_singular(const Vec2& x) const {
    return std::any_of(opt_.singular_points.begin(), opt_.singular_points.end(),
                       [&](const Vec2& s) { return (x - s).norm() < opt_.singular_radius; });
  }

  double region(const Vec2& x) const { return opt_.region ? opt_.region(x.x(), x.y()) : 1.0; }

  std::optional<Vec2> rk_step(const Vec2& x, const Vec2& k1, double h) const {
    std::optional<Vec2> k2, k3, k4;
    if (!(k2 = follow(bde_, x + 0.5 * h * k1, k1)) || !(k3 = follow(bde_, x + 0.5 * h * *k2, *k2)) ||
        !(k4 = follow(bde_, x + h * *k3, *k3)))
      return std::nullopt;
    return x + h / 6 * (k1 + 2 * *k2 + 2 * *k3 + *k4);
  }

  // Checks the step x -> xn; on termination appends the final point, found
  // along the step parametrised by `path` on [0, 1].
  template <class Path>
  std::optional<Termination> terminate(Arc& arc, const Vec2& x, const Vec2& xn, const Path& path) const {
    auto inside_box = [&](const Vec2& p) { return opt_.box - p.cwiseAbs().maxCoeff(); };
    if (inside_box(xn) < 0) {
      arc.points.push_back(bisect_path(inside_box, path));
      return Termination::boundary;
    }
    if (region(xn) <= 0) {
      arc.points.push_back(region(x) > 0 ? bisect_path([&](const Vec2& p) { return region(p); }, path) : xn);
      return Termination::end_locus;
    }
    if (near_singular(xn)) {
      arc.points.push_back(xn);
      return Termination::singular_point;
    }
    return std::nullopt;
  }

  // Integrates the Lie-Cartan lift until the two roots separate again.
  std::optional<Termination> lifted(Arc& arc, Vec2& x, Vec2& d, double h, int& steps, double& length) const {
    bool p_chart = std::abs(d.x()) >= std::abs(d.y());
    Vec3 X(x.x(), x.y(), p_chart ? d.y() / d.x() : d.x() / d.y());
    const double step = std::clamp(h, 1e-6, 1e-3);
    auto projected = [&](const Vec3& v, bool pc) {
      const Vec3 f = (pc ? lift_p_ : lift_q_)(v);
      return Vec2(f.x(), f.y());
    };
    double sense = projected(X, p_chart).dot(d) >= 0 ? 1.0 : -1.0;
    auto rhs = [&](const Vec3& v) -> Vec3 {
      const Vec3 f = (p_chart ? lift_p_ : lift_q_)(v);
      const double n = f.norm();
      return n == 0 ? Vec3::Zero() : Vec3(sense * f / n);
    };
    while (steps < opt_.max_steps && length < opt_.max_length) {
      const Vec3 k1 = rhs(X);
      if (k1.isZero()) return Termination::singular_point;
      auto advance = [&](double t) {
        const Vec3 k2 = rhs(X + 0.5 * t * k1), k3 = rhs(X + 0.5 * t * k2), k4 = rhs(X + t * k3);
        return Vec3(X + t / 6 * (k1 + 2 * k2 + 2 * k3 + k4));
      };
      const Vec3 Xn = advance(step);
      const Vec2 xn(Xn.x(), Xn.y());
      ++steps;
      if (auto end = terminate(arc, x, xn, [&](double t) { return Vec2(advance(t * step).head<2>()); })) return end;
      // near a fold the lift moves mostly in slope
      if ((xn - arc.points.back()).norm() > 1e-10) arc.points.push_back(xn);
      length += (xn - x).norm();
      const Vec2 v = projected(Xn, p_chart) * sense;
      if (v.norm() > 0) d = v.normalized();
      x = xn;
      X = Xn;
      if (std::abs(X.z()) > 2) {
        p_chart = !p_chart;
        X.z() = 1 / X.z();
        const Vec2 w = projected(X, p_chart);
        sense = w.dot(d) >= 0 ? 1.0 : -1.0;
      }
      const auto [L, M, N] = bde_.at(x.x(), x.y());
      if (std::abs(relative_discriminant(L, M, N)) > 100 * opt_.lift_threshold) return std::nullopt;
    }
    return Termination::step_limit;
  }

  const BDE& bde_;
  const TraceOptions& opt_;
  LieCartanField lift_p_, lift_q_;
};

std::vector<double> linspace_centers(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (i + 0.5) * (hi - lo) / n;
  return out;
}

// Spatial hash of traced points, per foliation branch.
class PointIndex {
public:
  explicit PointIndex(double cell) : cell_(cell) {}
  void add(const Vec2& p) { cells_[key(cell_of(p.x()), cell_of(p.y()))].push_back(p); }
  bool near(const Vec2& p) const {
    const long i = cell_of(p.x()), j = cell_of(p.y());
    for (long di = -1; di <= 1; ++di)
      for (long dj = -1; dj <= 1; ++dj) {
        const auto it = cells_.find(key(i + di, j + dj));
        if (it == cells_.end()) continue;
        for (const Vec2& q : it->second)
          if ((p - q).norm() < cell_) return true;
      }
    return false;
  }

private:
  long cell_of(double x) const { return static_cast<long>(std::floor(x / cell_)); }
  static long long key(long i, long j) { return (static_cast<long long>(i) << 32) ^ (j & 0xffffffffLL); }
  double cell_;
  std::unordered_map<long long, std::vector<Vec2>> cells_;
};

void add_trajectory(std::vector<Trajectory>& out, PointIndex& index, Trajectory t) {
  // dense enough for the thinning radius
  for (std::size_t i = 0; i + 1 < t.points.size(); ++i) {
    const Vec2 a = t.points[i], b = t.points[i + 1];
    index.add(a);
    const int sub = static_cast<int>((b - a).norm() / 0.005);
    for (int k = 1; k <= sub; ++k) index.add(a + (b - a) * (double(k) / (sub + 1)));
  }
  if (!t.points.empty()) index.add(t.points.back());
  out.push_back(std::move(t));
}

void trace_grid(PhasePortrait& out, const BDE& bde, const FundamentalForms& forms, const PortraitOptions& opt,
                const std::function<double(double, double)>& region) {
  TraceOptions topt = opt.trace;
  topt.region = region;
  for (const auto& s : out.singular_points) topt.singular_points.push_back(s.point);
  PointIndex plus(opt.thinning), minus(opt.thinning);
  const auto grid = linspace_centers(-topt.box, topt.box, opt.seed_grid);
  for (double u : grid)
    for (double w : grid) {
      const Vec2 seed(u, w);
      if (region(u, w) <= 0 || bde.discriminant(u, w) <= 0) continue;
      for (Branch br : {Branch::plus, Branch::minus}) {
        PointIndex& index = br == Branch::plus ? plus : minus;
        if (index.near(seed)) continue;
        try {
          Trajectory t = trace_field(bde, seed, br, topt);
          t.foliation_id = classify_foliation(t, bde, forms, region);
          add_trajectory(out.trajectories, index, std::move(t));
        } catch (const Error&) {
          // seeds on degenerate leaves are skipped
        }
      }
    }
}

std::string format_slope(double q) {
  std::ostringstream s;
  s.precision(6);
  s << q;
  return s.str();
}

}  // namespace

std::string_view branch_name(Branch b) { return b == Branch::plus ? "plus" : "minus"; }
std::string_view foliation_name(Foliation f) { return f == Foliation::minimal ? "minimal" : "maximal"; }
std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::boundary: return "boundary";
    case Termination::end_locus: return "end_locus";
    case Termination::singular_point: return "singular_point";
    case Termination::step_limit: return "step_limit";
  }
  return "step_limit";
}

std::string Trajectory::label() const {
  return std::string(foliation_id ? foliation_name(*foliation_id) : branch_name(branch));
}

double chord_residual(const BDE& bde, const ChartPoint& p, const ChartPoint& q) {
  const Vec2 c = q - p, m = 0.5 * (p + q);
  const auto [L, M, N] = bde.at(m.x(), m.y());
  const double s = (std::abs(L) + std::abs(M) + std::abs(N)) * c.squaredNorm();
  if (s == 0) return 0.0;
  return std::abs(L * c.y() * c.y() + M * c.x() * c.y() + N * c.x() * c.x()) / s;
}

Trajectory trace_field(const BDE& bde, const ChartPoint& seed, Branch branch, const TraceOptions& options) {
  if (options.region && options.region(seed.x(), seed.y()) < 0) throw LeftDomain("seed outside the finite region");
  const auto [L, M, N] = bde.at(seed.x(), seed.y());
  if (M * M - 4 * L * N < 0) throw NegativeDiscriminant("no real principal direction at the seed");
  const auto dirs = null_directions(L, M, N, options.initial_angle);
  const double angle = branch == Branch::plus || options.initial_angle ? dirs.front() : dirs.back();
  const Vec2 d(std::cos(angle), std::sin(angle));

  const Tracer tracer(bde, options);
  Trajectory t;
  t.branch = branch;
  Arc fwd = tracer.run(seed, d);
  t.termination = fwd.end;
  if (options.both_directions) {
    Arc bwd = tracer.run(seed, -d);
    t.start = bwd.end;
    t.points.assign(bwd.points.rbegin(), bwd.points.rend());
    t.points.insert(t.points.end(), fwd.points.begin() + 1, fwd.points.end());
  } else {
    t.start = Termination::step_limit;
    t.points = std::move(fwd.points);
  }
  return t;
}

std::vector<Trajectory> trace_separatrices(const SuspensionSingularity& sing, const LieCartanField& field,
                                           const SeparatrixOptions& opt) {
  if (sing.type != SingularityType::hyperbolic_saddle)
    throw NonHyperbolic("separatrices need a hyperbolic saddle of the lift");
  using State = std::array<double, 3>;
  std::vector<Trajectory> out;
  for (int k = 0; k < 2; ++k) {
    const double lambda = sing.eigenvalues[k];
    const Vec3 v = sing.eigenvectors[k].normalized();
    const double tdir = lambda > 0 ? 1.0 : -1.0;
    for (double sgn : {1.0, -1.0}) {
      auto rhs = [&](const State& x, State& dx, double) {
        const Vec3 f = field(Vec3(x[0], x[1], x[2]));
        const double n = f.norm();
        for (int i = 0; i < 3; ++i) dx[i] = n == 0 ? 0.0 : tdir * f[i] / n;
      };
      const Vec3 start = sing.point() + sgn * opt.offset * v;
      State x{start.x(), start.y(), start.z()};
      Trajectory t;
      t.lift_chart = sing.chart;
      t.eigenvalue = lambda;
      t.source = std::string(sing.chart == SlopeChart::p ? "p=" : "q=") + format_slope(sing.slope);
      t.lift.push_back(start);
      t.points.emplace_back(start.x(), start.y());
      auto stepper = odeint::make_controlled(opt.tolerance, opt.tolerance, odeint::runge_kutta_dopri5<State>());
      double time = 0, dt = opt.offset;
      t.termination = Termination::step_limit;
      for (int steps = 0; steps < 200000 && time < opt.max_length; ++steps) {
        const double before = time;
        if (stepper.try_step(rhs, x, time, dt) != odeint::success) continue;
        dt = std::min(dt, 1e-2);
        if (time == before) break;
        const Vec3 X(x[0], x[1], x[2]);
        t.lift.push_back(X);
        t.points.emplace_back(X.x(), X.y());
        if (std::max(std::abs(X.x()), std::abs(X.y())) > opt.box || std::abs(X.z()) > opt.max_slope) {
          t.termination = Termination::boundary;
          break;
        }
        if (field(X).norm() < 1e-13) {
          t.termination = Termination::singular_point;
          break;
        }
      }
      if (opt.region)
        t.enters_finite_region = std::any_of(t.points.begin(), t.points.end(),
                                             [&](const Vec2& p) { return opt.region(p.x(), p.y()) > 1e-9; });
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::optional<Foliation> classify_foliation(const Trajectory& t, const BDE& bde, const FundamentalForms& forms,
                                            const std::function<double(double, double)>& region) {
  const std::size_t n = t.points.size();
  if (n < 2) return std::nullopt;
  // interior points nearest the middle first
  for (std::size_t off = 0; off < n; ++off) {
    for (std::size_t i : {n / 2 + off, n / 2 - std::min(off, n / 2)}) {
      if (i + 1 >= n) continue;
      const Vec2 p = t.points[i], c = t.points[i + 1] - p;
      if (c.norm() == 0 || (region && region(p.x(), p.y()) <= 1e-9)) continue;
      const auto [L, M, N] = bde.at(p.x(), p.y());
      if (M * M - 4 * L * N <= 0) continue;
      const auto dirs = null_directions(L, M, N, line_angle(c));
      if (dirs.size() != 2) continue;
      const RawForms r = reassemble(forms, p.x(), p.y());
      auto kn = [&](double th) {
        const double x = std::cos(th), y = std::sin(th);
        return (r.e * x * x + 2 * r.f * x * y + r.g * y * y) / (r.E * x * x + 2 * r.F * x * y + r.G * y * y);
      };
      return kn(dirs[0]) >= kn(dirs[1]) ? Foliation::maximal : Foliation::minimal;
    }
  }
  return std::nullopt;
}

int saddle_sector(const CriticalEndJet& jet, const ChartPoint& p) {
  if (height_function(jet, 4).evaluate(p.x(), p.y()) <= 0) return 0;
  return p.y() - jet.a * p.x() / 2 > 0 ? 1 : -1;
}

PhasePortrait saddle_blowup_trace(const CriticalEndJet& jet, const SeparatrixOptions& options) {
  if (jet.kind != CriticalKind::saddle) throw InvalidJet("blow-up analysis needs a saddle critical jet");
  jet.validate();
  if (jet.a30 == 0) throw InvalidJet("blow-up analysis needs a30 != 0");
  PhasePortrait out;
  out.chart = build_critical_chart(jet);
  out.box = options.box;
  out.singular_points.push_back({ChartPoint(0, 0), "saddle end point"});
  const JetSeries h = height_function(jet, 4);

  auto analyse = [&](const CriticalEndJet& j, const Eigen::Matrix2d& back, const std::string& name) {
    BlownUpBDE blown = blow_up(bde_critical(j, kExactOrder), Axis::first);
    for (JetSeries* s : {&blown.bde.L, &blown.bde.M, &blown.bde.N}) *s *= 1.0 / j.a;
    const LieCartanField field(blown.bde, SlopeChart::q);
    for (const SuspensionSingularity& s : suspension_singularities(field)) {
      out.suspension.push_back(s);
      if (s.type != SingularityType::hyperbolic_saddle) continue;
      SeparatrixOptions opt = options;
      opt.region = nullptr;
      opt.box = std::max(options.box, 1.0);
      for (Trajectory t : trace_separatrices(s, field, opt)) {
        t.source = name + " " + t.source;
        double reach = 0;
        for (ChartPoint& p : t.points) {
          reach = std::max(reach, std::abs(p.x()));
          p = back * ChartPoint(p.x(), p.x() * p.y());
        }
        // curves inside the exceptional divisor blow down to the origin
        if (reach < 1e-9) t.source += " (exceptional divisor)";
        auto last = std::find_if(t.points.begin(), t.points.end(),
                                 [&](const ChartPoint& p) { return p.cwiseAbs().maxCoeff() > options.box; });
        t.points.erase(last, t.points.end());
        t.enters_finite_region = reach >= 1e-9 && std::any_of(t.points.begin(), t.points.end(), [&](const ChartPoint& p) {
          return p.norm() > 1e-9 && h.evaluate(p.x(), p.y()) > 1e-6 * p.squaredNorm();
        });
        out.separatrices.push_back(std::move(t));
      }
    }
  };
  analyse(jet, Eigen::Matrix2d::Identity(), "branch1");
  const double phi = std::atan(jet.a);
  Eigen::Matrix2d rot;
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  analyse(rotate_saddle_jet(jet), rot, "branch2");
  return out;
}

PhasePortrait portrait(const RegularEndJet& jet, const PortraitOptions& opt) {
  PhasePortrait out;
  out.chart = build_regular_chart(jet);
  out.box = opt.trace.box;
  const BDE bde = bde_regular(jet, opt.order);
  const FundamentalForms forms = fundamental_forms_regular(jet, opt.order);
  const EndPointClass cls = classify_regular(jet, opt.tol);
  auto region = [](double, double w) { return w; };
  if (cls.verdict != Verdict::Biregular) {
    out.singular_points.push_back({ChartPoint(0, 0), std::string(verdict_name(cls.verdict))});
    SeparatrixOptions sopt;
    sopt.box = opt.trace.box;
    sopt.region = region;
    for (SlopeChart chart : {SlopeChart::p, SlopeChart::q}) {
      const LieCartanField field(bde, chart);
      std::vector<SuspensionSingularity> sings;
      try {
        sings = suspension_singularities(field, -1.0, 1.0);
      } catch (const NoSingularity&) {
        continue;
      }
      for (const auto& s : sings) {
        out.suspension.push_back(s);
        if (s.type != SingularityType::hyperbolic_saddle) continue;
        for (Trajectory t : trace_separatrices(s, field, sopt)) {
          t.foliation_id = classify_foliation(t, bde, forms, region);
          out.separatrices.push_back(std::move(t));
        }
      }
    }
  }
  trace_grid(out, bde, forms, opt, region);
  return out;
}

PhasePortrait portrait(const CriticalEndJet& jet, const PortraitOptions& opt) {
  jet.validate();
  const EndPointClass cls = classify_critical(jet, opt.tol);
  PhasePortrait out;
  if (jet.kind == CriticalKind::saddle && jet.a30 != 0) {
    SeparatrixOptions sopt;
    sopt.box = opt.trace.box;
    out = saddle_blowup_trace(jet, sopt);
    out.singular_points.front().label = std::string(verdict_name(cls.verdict));
  } else {
    out.chart = build_critical_chart(jet);
    out.box = opt.trace.box;
    out.singular_points.push_back({ChartPoint(0, 0), std::string(verdict_name(cls.verdict))});
  }
  const BDE bde = bde_critical(jet, opt.order);
  const FundamentalForms forms = fundamental_forms_critical(jet, opt.order);
  const JetSeries h = height_function(jet, 4);
  auto region = [h](double u, double v) { return h.evaluate(u, v); };
  for (Trajectory& t : out.separatrices) t.foliation_id = classify_foliation(t, bde, forms, region);
  trace_grid(out, bde, forms, opt, region);
  return out;
}

std::vector<double> winding_angles(const Trajectory& t, double a, double b) {
  std::vector<double> out;
  out.reserve(t.points.size());
  double prev = 0;
  for (const Vec2& p : t.points) {
    const double th = std::atan2(p.y() / a, p.x() / b);
    if (out.empty()) {
      out.push_back(th);
    } else {
      double d = th - prev;
      d -= 2 * std::numbers::pi * std::round(d / (2 * std::numbers::pi));
      out.push_back(out.back() + d);
    }
    prev = th;
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "u,w,foliation_id\n";
  out.precision(17);
  const std::string label = t.label();
  for (const Vec2& p : t.points) out << p.x() << ',' << p.y() << ',' << label << '\n';
}

void write_lift_csv(std::ostream& out, const Trajectory& t) {
  out << "u,w,s,chart\n";
  out.precision(17);
  const char* chart = t.lift_chart == SlopeChart::q ? "q" : "p";
  for (const Vec3& x : t.lift) out << x.x() << ',' << x.y() << ',' << x.z() << ',' << chart << '\n';
}

void write_portrait_svg(std::ostream& out, const PhasePortrait& p) {
  constexpr double size = 600, margin = 20;
  const double box = p.box;
  auto X = [&](double u) { return margin + (u + box) / (2 * box) * (size - 2 * margin); };
  auto Y = [&](double w) { return size - margin - (w + box) / (2 * box) * (size - 2 * margin); };
  auto inside = [&](const Vec2& q) { return q.cwiseAbs().maxCoeff() <= box; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<style>.minimal,.plus{stroke:#1f77b4}.maximal,.minus{stroke:#d62728;stroke-dasharray:4 2}"
         ".separatrix{stroke:#000;stroke-width:1.6}.end-locus{stroke:#2ca02c;stroke-width:2.5}"
         "polyline,line{fill:none;stroke-width:0.8}.singular{fill:#000}</style>\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size - 2 * margin << "\" height=\""
      << size - 2 * margin << "\" fill=\"none\" stroke=\"#888\"/>\n";

  if (p.chart) {
    // end locus as the zero set of the region function, by marching squares
    auto region = [&](double u, double w) {
      return std::visit([&](const auto& c) { return c.region(u, w); }, *p.chart);
    };
    constexpr int n = 200;
    const double hstep = 2 * box / n;
    out << "<g class=\"end-locus\">\n";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double u0 = -box + i * hstep, w0 = -box + j * hstep;
        const std::array<Vec2, 4> c = {Vec2(u0, w0), Vec2(u0 + hstep, w0), Vec2(u0 + hstep, w0 + hstep),
                                       Vec2(u0, w0 + hstep)};
        std::array<double, 4> f;
        for (int k = 0; k < 4; ++k) f[k] = region(c[k].x(), c[k].y());
        std::vector<Vec2> cross;
        for (int k = 0; k < 4; ++k) {
          const double a = f[k], b = f[(k + 1) % 4];
          if ((a > 0) != (b > 0)) cross.push_back(c[k] + (c[(k + 1) % 4] - c[k]) * (a / (a - b)));
        }
        for (std::size_t k = 0; k + 1 < cross.size(); k += 2)
          out << "<line class=\"end-locus\" x1=\"" << X(cross[k].x()) << "\" y1=\"" << Y(cross[k].y())
              << "\" x2=\"" << X(cross[k + 1].x()) << "\" y2=\"" << Y(cross[k + 1].y()) << "\"/>\n";
      }
    out << "</g>\n";
  }

  auto polyline = [&](const Trajectory& t, const std::string& cls) {
    std::ostringstream pts;
    bool any = false;
    for (const Vec2& q : t.points) {
      if (!inside(q)) continue;
      pts << X(q.x()) << ',' << Y(q.y()) << ' ';
      any = true;
    }
    if (any) out << "<polyline class=\"" << cls << "\" points=\"" << pts.str() << "\"/>\n";
  };
  for (const Trajectory& t : p.trajectories) polyline(t, t.label());
  for (const Trajectory& t : p.separatrices) polyline(t, "separatrix");
  for (const SingularMark& s : p.singular_points)
    out << "<circle class=\"singular\" cx=\"" << X(s.point.x()) << "\" cy=\"" << Y(s.point.y())
        << "\" r=\"4\"><title>" << s.label << "</title></circle>\n";
  out << "</svg>\n";
}

}  // namespace endline
