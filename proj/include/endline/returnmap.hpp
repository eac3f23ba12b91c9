#pragma once

#include <array>
#include <utility>
#include <vector>

#include "endline/charts.hpp"
#include "endline/jets.hpp"

namespace endline {

/// The definite critical BDE in the polar coordinates u = b r cos(t), v = a r sin(t):
/// L dr^2 + M dr dt + N dt^2, each a series in r with trigonometric coefficients.
/// L = l0 + l1 r + ..., M = m0 + m1 r + ..., N = r^2 (n0/2 + n1 r/6 + n2 r^2/24 + ...).
struct PolarBDE {
  CriticalEndJet jet;
  PolarSeries L, M, N;

  const TrigPoly& l(int k) const { return L[k]; }
  const TrigPoly& m(int k) const { return M[k]; }
  /// n_k, the k-th normalized coefficient of N / r^2.
  TrigPoly n(int k) const;
};

PolarBDE polar_bde(const CriticalEndJet& jet);

/// dr/dt = d2 r^2 / 2 + d3 r^3 / 6 + d4 r^4 / 24 + ... for the root vanishing at r = 0.
struct RadialSeries {
  TrigPoly d2, d3, d4;

  double evaluate(double r, double theta) const;
};

RadialSeries radial_ode_series(const PolarBDE& pbde);

struct ReturnMapReport {
  std::vector<double> theta;
  std::vector<std::array<double, 4>> q;
  std::array<double, 4> q_end{};
  double delta_closed = 0;
  double pi4_closed = 0;
  double pi4_numeric = 0;
  double relative_gap = 0;
  std::vector<std::pair<double, double>> poincare_samples;
};

inline constexpr int kDefaultQSteps = 4096;

ReturnMapReport integrate_q_system(const PolarBDE& pbde, int steps = kDefaultQSteps);

/// Return map of the circulating foliation on the ray t = 0, integrating the
/// exact radial equation with the root that vanishes at r = 0.
std::vector<std::pair<double, double>> poincare_numeric(const CriticalEndJet& jet, const std::vector<double>& radii);

/// q-system report plus direct return-map samples at `radii`.
ReturnMapReport returnmap_report(const CriticalEndJet& jet, int steps = kDefaultQSteps,
                                 const std::vector<double>& radii = {1e-2, 5e-3, 2.5e-3});

}  // namespace endline
