#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "endline/bde.hpp"
#include "endline/charts.hpp"

namespace endline {

namespace sample {

/// Coefficients uniform in [-1, 1].
RegularEndJet regular_jet(std::mt19937_64& rng);
/// a, b uniform in [0.5, 2]; cubics and quartics in [-1, 1].
CriticalEndJet definite_jet(std::mt19937_64& rng);
/// |a| uniform in [0.5, 2] with random sign; cubics and quartics in [-1, 1].
CriticalEndJet saddle_jet(std::mt19937_64& rng);

}  // namespace sample

namespace closed_form {

/// Closed-form regular BDE coefficients through second order (L, M) and third order (N).
BDE regular_bde(const RegularEndJet& jet);
/// Saddle BDE through third order. `reference_n` uses the reference v^3 coefficient
/// -2 a a21 of N; otherwise -2 a (a a12 + a21).
BDE saddle_bde(const CriticalEndJet& jet, bool reference_n = false);

double l0(const CriticalEndJet& jet, double theta);
double m1(const CriticalEndJet& jet, double theta);
/// `reference` uses the last term as 4 b a^2 a12 sin(theta); otherwise b a^2 a12 sin(theta).
double n0(const CriticalEndJet& jet, double theta, bool reference = false);
double m0(const CriticalEndJet& jet);

}  // namespace closed_form

/// Largest coefficient difference over total degrees [0, max_degree].
double max_coeff_error(const JetSeries& a, const JetSeries& b, int max_degree);

/// Central fourth-order finite-difference Jacobian of a Lie-Cartan field. The
/// field is cubic in the slope, so that column uses a step of max(h, |s| / 10).
Eigen::Matrix3d fd_jacobian(const LieCartanField& field, const Eigen::Vector3d& x, double h = 1e-3);

/// Sorted real parts of the two eigenvalues of largest modulus.
std::array<double, 2> principal_eigenvalues(const Eigen::Matrix3d& jacobian);

/// Least-squares coefficients of y = sum c_k x^k over `powers`.
std::vector<double> power_fit(const std::vector<ChartPoint>& points, const std::vector<int>& powers);

/// Leading coefficient of the traced curved inflexion separatrix, w ~ c u^2.
double inflexion_separatrix_quadratic(const RegularEndJet& jet);
/// Cubic coefficient of the leaf through (0, w0) at a cubic-contact end, fitted on |u| in [1e-3, 1e-2].
/// w0 steps down from 1e-6 to 1e-7 until the trace drops onto the flat leaf.
double cubic_contact_coefficient(const RegularEndJet& jet);

struct CheckResult {
  std::string name;
  double max_error = 0;
  double threshold = 0;
  bool pass() const { return max_error <= threshold; }
};

struct SuiteResult {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass() const;
};

const std::vector<std::string>& suite_names();

/// Parallelism cap from ENDLINE_THREADS, else the hardware concurrency.
unsigned thread_count();

/// Runs a named suite; trial k draws from a generator seeded with (seed, k).
/// Throws ParseError for unknown names.
SuiteResult run_suite(std::string_view name, int trials, std::uint64_t seed);

}  // namespace endline
