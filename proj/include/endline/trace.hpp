#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "endline/bde.hpp"
#include "endline/charts.hpp"
#include "endline/classify.hpp"

namespace endline {

enum class Branch { plus, minus };
enum class Foliation { minimal, maximal };
enum class Termination { boundary, end_locus, singular_point, step_limit };

std::string_view branch_name(Branch b);
std::string_view foliation_name(Foliation f);
std::string_view termination_name(Termination t);

struct Trajectory {
  std::vector<ChartPoint> points;
  Branch branch = Branch::plus;
  std::optional<Foliation> foliation_id;
  /// How the forward arc ended; the backward arc ending is `start`.
  Termination termination = Termination::step_limit;
  Termination start = Termination::step_limit;

  /// Separatrices only: the curve in (u, w, slope) before projection.
  std::vector<Eigen::Vector3d> lift;
  std::optional<SlopeChart> lift_chart;
  std::string source;
  double eigenvalue = 0;
  bool enters_finite_region = false;

  /// "minimal"/"maximal" when labelled, else the branch name.
  std::string label() const;
};

struct TraceOptions {
  double initial_step = 1e-3;
  double max_step = 2e-2;
  double min_step = 1e-12;
  int max_steps = 20000;
  double max_length = 10.0;
  /// Chart box [-box, box]^2.
  double box = 1.0;
  /// Relative chord residual allowed per step.
  double residual_tol = 1e-6;
  /// Relative discriminant below which integration moves to the Lie-Cartan lift.
  double lift_threshold = 1e-10;
  /// Finite region; positive inside. Defaults to everything.
  std::function<double(double, double)> region;
  /// Points treated as singular, with the capture radius.
  std::vector<ChartPoint> singular_points;
  double singular_radius = 1e-3;
  /// Initial line to follow instead of the branch order.
  std::optional<double> initial_angle;
  bool both_directions = true;
};

/// Root-following integration of one line field of the BDE through `seed`.
/// Throws NegativeDiscriminant at the seed and StepCollapse below min_step.
Trajectory trace_field(const BDE& bde, const ChartPoint& seed, Branch branch, const TraceOptions& options = {});

/// Relative BDE residual of the chord from p to q, evaluated at its midpoint.
double chord_residual(const BDE& bde, const ChartPoint& p, const ChartPoint& q);

struct SeparatrixOptions {
  double offset = 1e-6;
  double max_length = 1.0;
  double box = 1.0;
  double max_slope = 1e4;
  double tolerance = 1e-10;
  /// Finite region in the projected coordinates, used for tagging only.
  std::function<double(double, double)> region;
};

/// Integral curves of the Lie-Cartan field leaving a hyperbolic saddle along
/// the eigenvectors of its nonzero eigenvalues, both senses, projected to (u, w).
std::vector<Trajectory> trace_separatrices(const SuspensionSingularity& sing, const LieCartanField& field,
                                           const SeparatrixOptions& options = {});

/// Labels the foliation of a traced curve from the normal curvatures of the two
/// principal directions at an interior point.
std::optional<Foliation> classify_foliation(const Trajectory& t, const BDE& bde, const FundamentalForms& forms,
                                            const std::function<double(double, double)>& region);

struct SingularMark {
  ChartPoint point;
  std::string label;
};

struct PhasePortrait {
  std::optional<Chart> chart;
  double box = 1.0;
  std::vector<Trajectory> trajectories;
  std::vector<Trajectory> separatrices;
  std::vector<SingularMark> singular_points;
  /// Suspension singularities found, per slope chart, for counting.
  std::vector<SuspensionSingularity> suspension;
};

/// Saddle critical end: blow-up v = u w of each branch of the end locus (the
/// second after rotate_saddle_jet), separatrices of the Lie-Cartan saddles on
/// the exceptional divisor, blown down to the (u, v) chart.
PhasePortrait saddle_blowup_trace(const CriticalEndJet& jet, const SeparatrixOptions& options = {});

/// Sector of the finite region of a saddle end containing (u, v): +1 above the
/// end locus near the origin (v > 0), -1 below, 0 outside the finite region.
int saddle_sector(const CriticalEndJet& jet, const ChartPoint& p);

struct PortraitOptions {
  int seed_grid = 9;
  double thinning = 0.02;
  int order = kDefaultOrder;
  double tol = kDefaultTolerance;
  TraceOptions trace;
};

PhasePortrait portrait(const RegularEndJet& jet, const PortraitOptions& options = {});
PhasePortrait portrait(const CriticalEndJet& jet, const PortraitOptions& options = {});

/// Cumulative polar angle of a curve about the origin in the scaled
/// coordinates (u / b, v / a).
std::vector<double> winding_angles(const Trajectory& t, double a, double b);

void write_trajectory_csv(std::ostream& out, const Trajectory& t);
/// Separatrix lift: u, w, s, chart.
void write_lift_csv(std::ostream& out, const Trajectory& t);
void write_portrait_svg(std::ostream& out, const PhasePortrait& p);

}  // namespace endline
