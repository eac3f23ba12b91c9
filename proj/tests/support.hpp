#pragma once

#include <random>

#include "endline/charts.hpp"
#include "endline/jets.hpp"
#include "endline/verify.hpp"

namespace endline::fixtures {

inline JetSeries random_series(std::mt19937_64& rng, int order, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  JetSeries s(order);
  for (int d = 0; d <= order; ++d)
    for (int j = 0; j <= d; ++j) s.set(d - j, j, dist(rng));
  return s;
}

inline JetSeries random_unit_series(std::mt19937_64& rng, int order) {
  JetSeries s = random_series(rng, order);
  s.set(0, 0, 1.0);
  return s;
}

inline RegularEndJet random_regular_jet(std::mt19937_64& rng) { return sample::regular_jet(rng); }
inline CriticalEndJet random_definite_jet(std::mt19937_64& rng) { return sample::definite_jet(rng); }
inline CriticalEndJet random_saddle_jet(std::mt19937_64& rng) { return sample::saddle_jet(rng); }

inline double max_coeff_diff(const JetSeries& a, const JetSeries& b) {
  const int n = std::max(a.order(), b.order());
  double m = 0.0;
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) m = std::max(m, std::abs(a.coeff(d - j, j) - b.coeff(d - j, j)));
  return m;
}

}  // namespace endline::fixtures
