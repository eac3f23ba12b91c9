#include "endline/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>

#include "endline/errors.hpp"

namespace endline {
namespace {

constexpr std::array<std::string_view, 11> kNames = {
    "Biregular",          "InflexionHyperbolic",   "InflexionElliptic",        "InflexionCubicContact",
    "UmbilicInflexionD1", "UmbilicInflexionD3",    "CriticalFocalDefinite",    "CriticalDefiniteNonFocal",
    "CriticalSaddleEven", "CriticalSaddleOdd",     "Degenerate",
};

// Value together with the sum of monomial magnitudes it was built from.
struct Tracked {
  double v = 0, m = 0;
};

Tracked operator+(Tracked a, Tracked b) { return {a.v + b.v, a.m + b.m}; }
Tracked operator-(Tracked a, Tracked b) { return {a.v - b.v, a.m + b.m}; }
Tracked operator-(Tracked a) { return {-a.v, a.m}; }
Tracked operator*(Tracked a, Tracked b) { return {a.v * b.v, a.m * b.m}; }
Tracked operator*(double c, Tracked a) { return {c * a.v, std::abs(c) * a.m}; }

double pw(double x, int n) { return std::pow(x, n); }
Tracked pw(Tracked x, int n) { return {std::pow(x.v, n), std::pow(x.m, n)}; }

constexpr std::array<std::string_view, 13> kDeltaWeights = {
    "a^4 b^6", "a^6 b^4", "a^4 b^4", "a^8",     "b^8",     "b^6",     "a^6",
    "a^6 b^2", "a^2 b^6", "a^2 b^4", "a^4 b^2", "a^8 b^2", "a^2 b^8",
};

// Delta grouped by the weight monomial in a, b.
template <class T>
std::array<T, 13> delta_groups(T a, T b, T a30, T a21, T a12, T a03, T a40, T a31, T a22, T a13, T a04) {
  return {
      12*(a30*a21+3*a03*a30-5*a12*a21)*pw(b, 6)*pw(a, 4),
      12*(5*a12*a21-a12*a03-3*a03*a30)*pw(a, 6)*pw(b, 4),
      4*(3*a04*a30*a21+a13*pw(a21, 2)+10*a31*a03*a21)*pw(a, 4)*pw(b, 4)
      -4*(10*a13*a12*a30+3*a40*a12*a03+a31*pw(a12, 2))*pw(a, 4)*pw(b, 4),
      4*(a13*pw(a03, 2)-a04*a12*a03)*pw(a, 8),
      4*(a40*a30*a21-a31*pw(a30, 2))*pw(b, 8),
      3*(pw(a30, 3)*a03+2*a30*pw(a21, 3)-3*pw(a30, 2)*a21*a12)*pw(b, 6),
      3*(3*a12*pw(a03, 2)*a21-2*pw(a12, 3)*a03-a30*pw(a03, 3))*pw(a, 6),
      4*(a03*(2*a13*a21-3*a04*a30-3*a31*a03+12*a22*a12)+5*a04*a12*a21-13*a13*pw(a12, 2))*pw(a, 6)*pw(b, 2),
      4*(a30*(3*a13*a30-2*a31*a12+3*a40*a03-12*a22*a21)-5*a40*a21*a12+13*a31*pw(a21, 2))*pw(a, 2)*pw(b, 6),
      9*(a30*pw(a21, 2)*a03-2*a30*a21*pw(a12, 2)+a12*pw(a21, 3))*pw(a, 2)*pw(b, 4),
      9*(-pw(a12, 3)*a21-a30*a03*pw(a12, 2)+2*a12*pw(a21, 2)*a03)*pw(a, 4)*pw(b, 2),
      12*pw(b, 2)*pw(a, 8)*a12*a03,
      -12*pw(b, 8)*pw(a, 2)*a30*a21,
  };
}

template <class T>
T delta_poly(T a, T b, T a30, T a21, T a12, T a03, T a40, T a31, T a22, T a13, T a04) {
  const auto g = delta_groups(a, b, a30, a21, a12, a03, a40, a31, a22, a13, a04);
  T sum = g[0];
  for (std::size_t i = 1; i < g.size(); ++i) sum = sum + g[i];
  return sum;
}

template <class T>
T sigma_poly(T a, T a30, T a21, T a12, T a03) {
  return a * a30 * (a03 * pw(a, 3) + 3 * a * a21 + 3 * pw(a, 2) * a12 + a30);
}

bool is_zero(Tracked x, double tol) { return std::abs(x.v) <= tol * x.m; }

template <class Jet>
double jet_scale(const Jet& j) {
  double m = std::max({std::abs(j.a), std::abs(j.b), std::abs(j.a30), std::abs(j.a21), std::abs(j.a12),
                       std::abs(j.a03), std::abs(j.a40), std::abs(j.a31), std::abs(j.a22), std::abs(j.a13),
                       std::abs(j.a04)});
  if constexpr (std::is_same_v<Jet, RegularEndJet>) m = std::max({m, std::abs(j.k0), std::abs(j.c)});
  return m > 0 ? m : 1.0;
}

template <class Jet>
std::array<Tracked, 11> tracked(const Jet& j) {
  const double m = jet_scale(j);
  return {Tracked{j.a, m}, {j.b, m},   {j.a30, m}, {j.a21, m}, {j.a12, m}, {j.a03, m},
          {j.a40, m},      {j.a31, m}, {j.a22, m}, {j.a13, m}, {j.a04, m}};
}

}  // namespace

std::string_view verdict_name(Verdict v) { return kNames.at(static_cast<std::size_t>(v)); }

Verdict verdict_from_name(std::string_view name) {
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end()) throw ParseError("unknown verdict '" + std::string(name) + "'");
  return static_cast<Verdict>(it - kNames.begin());
}

double delta(const CriticalEndJet& j) {
  return delta_poly(j.a, j.b, j.a30, j.a21, j.a12, j.a03, j.a40, j.a31, j.a22, j.a13, j.a04);
}

std::vector<DeltaTerm> delta_terms(const CriticalEndJet& j) {
  const auto g = delta_groups(j.a, j.b, j.a30, j.a21, j.a12, j.a03, j.a40, j.a31, j.a22, j.a13, j.a04);
  std::vector<DeltaTerm> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back({std::string(kDeltaWeights[i]), g[i]});
  return out;
}

double sigma(const CriticalEndJet& j) { return sigma_poly(j.a, j.a30, j.a21, j.a12, j.a03); }

EndPointClass classify_regular(const RegularEndJet& jet, double tol) {
  const auto [a, b, a30, a21, a12, a03, a40, a31, a22, a13, a04] = tracked(jet);
  const Tracked beta = a30 * b;
  const Tracked cubic_contact = b * a40;
  const Tracked umbilic = a21 * a21 - a12 * a30;

  EndPointClass out;
  out.certificates = {{"a", a.v}, {"beta", beta.v}, {"b_a40", cubic_contact.v}, {"umbilic_discriminant", umbilic.v}};
  if (!is_zero(a, tol)) {
    out.verdict = Verdict::Biregular;
  } else if (!is_zero(a30, tol) && !is_zero(b, tol)) {
    out.verdict = beta.v < 0 ? Verdict::InflexionHyperbolic : Verdict::InflexionElliptic;
  } else if (is_zero(a30, tol) && !is_zero(b, tol) && !is_zero(a40, tol)) {
    out.verdict = Verdict::InflexionCubicContact;
  } else if (is_zero(b, tol) && !is_zero(a30, tol) && !is_zero(umbilic, tol)) {
    out.verdict = umbilic.v < 0 ? Verdict::UmbilicInflexionD1 : Verdict::UmbilicInflexionD3;
  }
  return out;
}

EndPointClass classify_critical(const CriticalEndJet& jet, double tol) {
  EndPointClass out;
  try {
    jet.validate();
  } catch (const InvalidJet&) {
    return out;
  }
  const auto [a, b, a30, a21, a12, a03, a40, a31, a22, a13, a04] = tracked(jet);
  out.certificates["a"] = jet.a;
  if (jet.kind == CriticalKind::definite) {
    const Tracked d = delta_poly(a, b, a30, a21, a12, a03, a40, a31, a22, a13, a04);
    out.certificates["b"] = jet.b;
    out.certificates["delta"] = d.v;
    out.verdict = is_zero(d, tol) ? Verdict::CriticalDefiniteNonFocal : Verdict::CriticalFocalDefinite;
    return out;
  }
  const Tracked s = sigma_poly(a, a30, a21, a12, a03);
  out.certificates["sigma"] = s.v;
  out.certificates["k1"] = jet.a30 / jet.a;
  out.certificates["k2"] =
      -(jet.a03 * jet.a * jet.a * jet.a + 3 * jet.a * jet.a21 + 3 * jet.a * jet.a * jet.a12 + jet.a30) / (3 * jet.a);
  if (!is_zero(s, tol)) out.verdict = s.v > 0 ? Verdict::CriticalSaddleEven : Verdict::CriticalSaddleOdd;
  return out;
}

}  // namespace endline
