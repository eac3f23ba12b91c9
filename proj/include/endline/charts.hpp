#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "endline/jets.hpp"

namespace endline {

using ChartPoint = Eigen::Vector2d;

/// Jet of the height function at a regular end point:
/// h = k0 w + a u^2/2 + b u w + c w^2/2 + cubic/6 + quartic/24 (binomial weights).
struct RegularEndJet {
  double k0 = 0, a = 0, b = 0, c = 0;
  double a30 = 0, a21 = 0, a12 = 0, a03 = 0;
  double a40 = 0, a31 = 0, a22 = 0, a13 = 0, a04 = 0;

  bool operator==(const RegularEndJet&) const = default;
};

enum class CriticalKind { definite, saddle };

/// Jet at a critical end point. Quadratic part a^2 u^2 + b^2 v^2 (definite)
/// or (-a u + v) v (saddle); higher terms as in the regular jet.
struct CriticalEndJet {
  CriticalKind kind = CriticalKind::definite;
  double a = 1, b = 1;
  double a30 = 0, a21 = 0, a12 = 0, a03 = 0;
  double a40 = 0, a31 = 0, a22 = 0, a13 = 0, a04 = 0;

  void validate() const;
  bool operator==(const CriticalEndJet&) const = default;
};

/// Order at which series built from quartic jets (forms, factors, BDE) are untruncated.
inline constexpr int kExactOrder = 16;

JetSeries height_function(const RegularEndJet& jet, int order);
JetSeries height_function(const CriticalEndJet& jet, int order);

class RegularChart {
public:
  explicit RegularChart(const RegularEndJet& jet);
  Eigen::Vector3d operator()(double u, double w) const;
  double region(double /*u*/, double w) const { return w; }
  const JetSeries& height() const { return h_; }

private:
  JetSeries h_;
};

class CriticalChart {
public:
  explicit CriticalChart(const CriticalEndJet& jet);
  Eigen::Vector3d operator()(double u, double v) const;
  double region(double u, double v) const { return h_.evaluate(u, v); }
  const JetSeries& height() const { return h_; }

private:
  JetSeries h_;
};

using Chart = std::variant<RegularChart, CriticalChart>;

RegularChart build_regular_chart(const RegularEndJet& jet);
CriticalChart build_critical_chart(const CriticalEndJet& jet);

std::vector<Eigen::Vector3d> chart_to_ambient(const std::vector<ChartPoint>& points, const Chart& chart);

/// Central projection of R^3 onto the upper hemisphere of S^3 and its inverse.
Eigen::Vector4d to_sphere(const Eigen::Vector3d& p);
Eigen::Vector3d from_sphere(const Eigen::Vector4d& q);

/// Fundamental forms with the singular factors cleared.
/// raw E = E / first_factor (likewise F, G with their own factors) and
/// raw e = e / (second_factor * sqrt(raw E raw G - raw F^2)).
struct FundamentalForms {
  JetSeries E, F, G;
  JetSeries e, f, g;
  JetSeries E_factor, F_factor, G_factor;
  JetSeries second_factor;
};

struct RawForms {
  double E, F, G, e, f, g;
};

FundamentalForms fundamental_forms_regular(const RegularEndJet& jet, int order = kDefaultOrder);
FundamentalForms fundamental_forms_critical(const CriticalEndJet& jet, int order = kDefaultOrder);

RawForms reassemble(const FundamentalForms& forms, double u, double w);

}  // namespace endline
