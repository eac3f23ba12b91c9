#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "endline/charts.hpp"
#include "endline/jets.hpp"

namespace endline {

/// L d(second)^2 + M d(first) d(second) + N d(first)^2 = 0.
struct BDE {
  JetSeries L, M, N;

  std::array<double, 3> at(double u, double w) const {
    return {L.evaluate(u, w), M.evaluate(u, w), N.evaluate(u, w)};
  }
  double discriminant(double u, double w) const {
    const auto [l, m, n] = at(u, w);
    return m * m - 4.0 * l * n;
  }
};

BDE bde_regular(const RegularEndJet& jet, int order = kDefaultOrder);
BDE bde_critical(const CriticalEndJet& jet, int order = kDefaultOrder);

/// Discriminant, relative to the magnitude of its two terms, below which the
/// two roots are treated as one.
inline constexpr double kTangencyThreshold = 1e-12;

/// Null lines of N x^2 + M x y + L y^2 as angles in (-pi/2, pi/2].
/// Without `previous` the order is (plus, minus): the null lines obtained by
/// rotating the positive eigen-axis of the form by +alpha and -alpha.
/// With `previous` the line nearest to it comes first.
/// Empty when the discriminant is negative.
std::vector<double> null_directions(double L, double M, double N,
                                    std::optional<double> previous = std::nullopt);

std::vector<double> direction_fields(const BDE& bde, const ChartPoint& point,
                                     std::optional<double> previous = std::nullopt);

/// Acute angle between two lines given as angles.
double line_angle_between(double a, double b);

enum class SlopeChart { p, q };

/// Lie-Cartan suspension of a BDE on (u, w, s).
/// p-chart: s = dw/du, F = L s^2 + M s + N, X = (F_s, s F_s, -(F_u + s F_w)).
/// q-chart: s = du/dw, F = N s^2 + M s + L, Y = (s F_s, F_s, -(s F_u + F_w)).
class LieCartanField {
public:
  LieCartanField(BDE bde, SlopeChart chart);

  SlopeChart chart() const { return chart_; }
  const BDE& bde() const { return bde_; }

  double implicit(const Eigen::Vector3d& x) const;
  Eigen::Vector3d gradient(const Eigen::Vector3d& x) const;
  Eigen::Vector3d operator()(const Eigen::Vector3d& x) const;
  Eigen::Matrix3d jacobian(const Eigen::Vector3d& x) const;

  /// Coefficients of F(0, 0, s), F_s(0, 0, s) and the third field component
  /// on the slope axis, lowest degree first.
  std::array<std::vector<double>, 3> axis_polynomials() const;

private:
  struct Partials {
    double v, u, w, uu, uw, ww;
  };
  Partials partials(int k, double u, double w) const;

  BDE bde_;
  SlopeChart chart_;
  // s^2, s^1, s^0 coefficients and their derivatives
  std::array<JetSeries, 3> c_, cu_, cw_, cuu_, cuw_, cww_;
};

LieCartanField lie_cartan(const BDE& bde, SlopeChart chart);

enum class SingularityType { hyperbolic_saddle, non_hyperbolic, other };

struct SuspensionSingularity {
  double slope = 0;
  SlopeChart chart = SlopeChart::p;
  Eigen::Matrix3d jacobian;
  /// Real parts; the eigenvalue of smallest modulus is last.
  std::array<double, 3> eigenvalues{};
  std::array<Eigen::Vector3d, 3> eigenvectors;
  SingularityType type = SingularityType::other;

  Eigen::Vector3d point() const { return {0.0, 0.0, slope}; }
};

std::vector<SuspensionSingularity> suspension_singularities(const LieCartanField& field,
                                                            double s_min = -1e6, double s_max = 1e6);

/// Real roots of sum c[k] x^k.
std::vector<double> real_roots(const std::vector<double>& coeffs);

/// Rotation by atan(a) that carries the branch of h = 0 tangent to v = a u onto
/// the new horizontal axis. The result is again in saddle normal form, with a' = -a.
CriticalEndJet rotate_saddle_jet(const CriticalEndJet& jet);

/// Blow-up v = u w (keep = first) or u = s v (keep = second), divided by the
/// largest power of the kept variable that divides all three coefficients.
struct BlownUpBDE {
  BDE bde;
  int divided_power = 0;
};
BlownUpBDE blow_up(const BDE& bde, Axis keep);

}  // namespace endline
