#include "endline/jets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "endline/errors.hpp"

namespace endline {

JetSeries::JetSeries(int order) : order_(std::max(order, 0)), coeffs_(size_for(order_), 0.0) {}

JetSeries JetSeries::constant(double c, int order) {
  JetSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

JetSeries JetSeries::variable(Axis axis, int order) {
  return axis == Axis::first ? monomial(1.0, 1, 0, order) : monomial(1.0, 0, 1, order);
}

JetSeries JetSeries::monomial(double c, int i, int j, int order) {
  JetSeries s(order);
  if (i + j <= s.order_) s.coeffs_[index(i, j)] = c;
  return s;
}

double JetSeries::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return 0.0;
  return coeffs_[index(i, j)];
}

void JetSeries::set(int i, int j, double value) {
  if (i >= 0 && j >= 0 && i + j <= order_) coeffs_[index(i, j)] = value;
}

void JetSeries::add_to(int i, int j, double value) {
  if (i >= 0 && j >= 0 && i + j <= order_) coeffs_[index(i, j)] += value;
}

double JetSeries::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double JetSeries::evaluate(double u, double w) const {
  double result = 0.0;
  double upow = 1.0;
  for (int i = 0; i <= order_; ++i) {
    double inner = 0.0;
    for (int j = order_ - i; j >= 0; --j) inner = inner * w + coeffs_[index(i, j)];
    result += upow * inner;
    upow *= u;
  }
  return result;
}

JetSeries JetSeries::truncated(int order) const {
  JetSeries s(std::min(order, order_));
  std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
  return s;
}

JetSeries& JetSeries::operator+=(const JetSeries& other) {
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

JetSeries& JetSeries::operator-=(const JetSeries& other) {
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

JetSeries& JetSeries::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

JetSeries operator+(JetSeries a, double c) {
  a.coeffs_[0] += c;
  return a;
}

JetSeries operator*(const JetSeries& a, const JetSeries& b) {
  const int n = std::min(a.order_, b.order_);
  JetSeries out(n);
  for (int d1 = 0; d1 <= n; ++d1) {
    for (int j1 = 0; j1 <= d1; ++j1) {
      const double x = a.coeffs_[JetSeries::index(d1 - j1, j1)];
      if (x == 0.0) continue;
      for (int d2 = 0; d1 + d2 <= n; ++d2) {
        for (int j2 = 0; j2 <= d2; ++j2) {
          out.coeffs_[JetSeries::index(d1 - j1 + d2 - j2, j1 + j2)] +=
              x * b.coeffs_[JetSeries::index(d2 - j2, j2)];
        }
      }
    }
  }
  return out;
}

JetSeries add(const JetSeries& a, const JetSeries& b) { return a + b; }
JetSeries mul(const JetSeries& a, const JetSeries& b) { return a * b; }

JetSeries reciprocal(const JetSeries& a) {
  const double a00 = a.coeff(0, 0);
  if (a00 == 0.0) throw ZeroConstantTerm("reciprocal: constant term is zero");
  const int n = a.order();
  JetSeries b(n);
  b.set(0, 0, 1.0 / a00);
  for (int d = 1; d <= n; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      double acc = 0.0;
      for (int k = 0; k <= i; ++k) {
        for (int l = 0; l <= j; ++l) {
          if (k == 0 && l == 0) continue;
          acc += a.coeff(k, l) * b.coeff(i - k, j - l);
        }
      }
      b.set(i, j, -acc / a00);
    }
  }
  return b;
}

JetSeries sqrt_series(const JetSeries& a) {
  const double a00 = a.coeff(0, 0);
  if (!(a00 > 0.0)) throw NonPositiveConstantTerm("sqrt_series: constant term is not positive");
  const int n = a.order();
  JetSeries s(n);
  const double s00 = std::sqrt(a00);
  s.set(0, 0, s00);
  for (int d = 1; d <= n; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      double acc = a.coeff(i, j);
      for (int k = 0; k <= i; ++k) {
        for (int l = 0; l <= j; ++l) {
          if ((k == 0 && l == 0) || (k == i && l == j)) continue;
          acc -= s.coeff(k, l) * s.coeff(i - k, j - l);
        }
      }
      s.set(i, j, acc / (2.0 * s00));
    }
  }
  return s;
}

JetSeries differentiate(const JetSeries& a, Axis axis) {
  JetSeries out(a.order() - 1);
  for (int d = 0; d < a.order(); ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (axis == Axis::first)
        out.set(i, j, (i + 1) * a.coeff(i + 1, j));
      else
        out.set(i, j, (j + 1) * a.coeff(i, j + 1));
    }
  }
  return out;
}

JetSeries linear_substitute(const JetSeries& a, double m00, double m01, double m10, double m11) {
  const int n = a.order();
  const JetSeries x = JetSeries::monomial(m00, 1, 0, n) + JetSeries::monomial(m01, 0, 1, n);
  const JetSeries y = JetSeries::monomial(m10, 1, 0, n) + JetSeries::monomial(m11, 0, 1, n);
  std::vector<JetSeries> xpow{JetSeries::constant(1.0, n)};
  std::vector<JetSeries> ypow{JetSeries::constant(1.0, n)};
  for (int k = 1; k <= n; ++k) {
    xpow.push_back(xpow.back() * x);
    ypow.push_back(ypow.back() * y);
  }
  JetSeries out(n);
  for (int d = 0; d <= n; ++d) {
    for (int j = 0; j <= d; ++j) {
      const double c = a.coeff(d - j, j);
      if (c != 0.0) out += c * (xpow[d - j] * ypow[j]);
    }
  }
  return out;
}

// TrigPoly

TrigPoly TrigPoly::constant(double c) {
  TrigPoly t;
  t.add_even(0, c);
  return t;
}

TrigPoly TrigPoly::monomial(double c, int cos_power, int sin_power) {
  TrigPoly t;
  const int half = sin_power / 2;
  double binom = 1.0;
  for (int m = 0; m <= half; ++m) {
    const double term = c * binom * ((m % 2 == 0) ? 1.0 : -1.0);
    if (sin_power % 2 == 0)
      t.add_even(cos_power + 2 * m, term);
    else
      t.add_odd(cos_power + 2 * m, term);
    binom = binom * (half - m) / (m + 1);
  }
  return t;
}

void TrigPoly::add_even(int k, double c) {
  if (static_cast<int>(even_.size()) <= k) even_.resize(k + 1, 0.0);
  even_[k] += c;
}

void TrigPoly::add_odd(int k, double c) {
  if (static_cast<int>(odd_.size()) <= k) odd_.resize(k + 1, 0.0);
  odd_[k] += c;
}

double TrigPoly::cos_coeff(int k) const {
  return k >= 0 && k < static_cast<int>(even_.size()) ? even_[k] : 0.0;
}

double TrigPoly::sin_cos_coeff(int k) const {
  return k >= 0 && k < static_cast<int>(odd_.size()) ? odd_[k] : 0.0;
}

int TrigPoly::degree() const {
  int deg = 0;
  for (int k = 0; k < static_cast<int>(even_.size()); ++k)
    if (even_[k] != 0.0) deg = std::max(deg, k);
  for (int k = 0; k < static_cast<int>(odd_.size()); ++k)
    if (odd_[k] != 0.0) deg = std::max(deg, k + 1);
  return deg;
}

double TrigPoly::evaluate(double theta) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double e = 0.0;
  for (auto it = even_.rbegin(); it != even_.rend(); ++it) e = e * c + *it;
  double o = 0.0;
  for (auto it = odd_.rbegin(); it != odd_.rend(); ++it) o = o * c + *it;
  return e + s * o;
}

double TrigPoly::integral() const {
  double total = 0.0;
  double ratio = 1.0;  // (k-1)!!/k!! for even k
  for (int k = 0; k < static_cast<int>(even_.size()); k += 2) {
    if (k > 0) ratio *= static_cast<double>(k - 1) / k;
    total += even_[k] * ratio;
  }
  return 2.0 * std::numbers::pi * total;
}

double TrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : even_) m = std::max(m, std::abs(c));
  for (double c : odd_) m = std::max(m, std::abs(c));
  return m;
}

bool TrigPoly::is_constant(double tol) const {
  for (std::size_t k = 1; k < even_.size(); ++k)
    if (std::abs(even_[k]) > tol) return false;
  for (double c : odd_)
    if (std::abs(c) > tol) return false;
  return true;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  for (std::size_t k = 0; k < other.even_.size(); ++k) add_even(static_cast<int>(k), other.even_[k]);
  for (std::size_t k = 0; k < other.odd_.size(); ++k) add_odd(static_cast<int>(k), other.odd_[k]);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
  for (std::size_t k = 0; k < other.even_.size(); ++k) add_even(static_cast<int>(k), -other.even_[k]);
  for (std::size_t k = 0; k < other.odd_.size(); ++k) add_odd(static_cast<int>(k), -other.odd_[k]);
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  for (double& c : even_) c *= s;
  for (double& c : odd_) c *= s;
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly out;
  for (std::size_t i = 0; i < a.even_.size(); ++i) {
    if (a.even_[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.even_.size(); ++j)
      out.add_even(static_cast<int>(i + j), a.even_[i] * b.even_[j]);
    for (std::size_t j = 0; j < b.odd_.size(); ++j)
      out.add_odd(static_cast<int>(i + j), a.even_[i] * b.odd_[j]);
  }
  for (std::size_t i = 0; i < a.odd_.size(); ++i) {
    if (a.odd_[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.even_.size(); ++j)
      out.add_odd(static_cast<int>(i + j), a.odd_[i] * b.even_[j]);
    for (std::size_t j = 0; j < b.odd_.size(); ++j) {
      const double p = a.odd_[i] * b.odd_[j];
      out.add_even(static_cast<int>(i + j), p);
      out.add_even(static_cast<int>(i + j + 2), -p);
    }
  }
  return out;
}

// PolarSeries

const TrigPoly& PolarSeries::operator[](int k) const {
  static const TrigPoly zero;
  return k >= 0 && k < static_cast<int>(terms.size()) ? terms[k] : zero;
}

double PolarSeries::evaluate(double r, double theta) const {
  double total = 0.0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) total = total * r + it->evaluate(theta);
  return total;
}

PolarSeries polar_substitute(const JetSeries& a, double scale_u, double scale_v) {
  PolarSeries out;
  out.terms.resize(a.order() + 1);
  for (int d = 0; d <= a.order(); ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const double c = a.coeff(i, j);
      if (c == 0.0) continue;
      out.terms[d] += TrigPoly::monomial(c * std::pow(scale_u, i) * std::pow(scale_v, j), i, j);
    }
  }
  return out;
}

}  // namespace endline
