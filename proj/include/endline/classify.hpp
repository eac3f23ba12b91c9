#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "endline/charts.hpp"

namespace endline {

enum class Verdict {
  Biregular,
  InflexionHyperbolic,
  InflexionElliptic,
  InflexionCubicContact,
  UmbilicInflexionD1,
  UmbilicInflexionD3,
  CriticalFocalDefinite,
  CriticalDefiniteNonFocal,
  CriticalSaddleEven,
  CriticalSaddleOdd,
  Degenerate,
};

std::string_view verdict_name(Verdict v);
/// Throws ParseError for unknown names.
Verdict verdict_from_name(std::string_view name);

struct EndPointClass {
  Verdict verdict = Verdict::Degenerate;
  /// Keys: a, b, beta, b_a40, umbilic_discriminant, delta, sigma, k1, k2.
  std::map<std::string, double> certificates;
};

inline constexpr double kDefaultTolerance = 1e-9;

/// Zero tests are |x| <= tol * bound, where the bound sums the magnitudes of
/// the monomials of x with every coefficient replaced by the largest one.
EndPointClass classify_regular(const RegularEndJet& jet, double tol = kDefaultTolerance);
EndPointClass classify_critical(const CriticalEndJet& jet, double tol = kDefaultTolerance);

double delta(const CriticalEndJet& jet);

struct DeltaTerm {
  std::string weight;
  double value = 0;
};

/// Contributions to delta grouped by their weight monomial in a, b.
std::vector<DeltaTerm> delta_terms(const CriticalEndJet& jet);
double sigma(const CriticalEndJet& jet);

}  // namespace endline
