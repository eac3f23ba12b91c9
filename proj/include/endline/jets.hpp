#pragma once

#include <span>
#include <vector>

namespace endline {

inline constexpr int kDefaultOrder = 6;

enum class Axis { first, second };

/// Bivariate Taylor polynomial truncated at total degree `order`.
/// The second variable is w in the regular chart and v in the critical chart.
class JetSeries {
public:
  JetSeries() : JetSeries(0) {}
  explicit JetSeries(int order);

  static JetSeries constant(double c, int order);
  static JetSeries variable(Axis axis, int order);
  static JetSeries monomial(double c, int i, int j, int order);

  int order() const noexcept { return order_; }
  double coeff(int i, int j) const;
  void set(int i, int j, double value);
  void add_to(int i, int j, double value);
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  double max_abs() const;

  double evaluate(double u, double w) const;
  JetSeries truncated(int order) const;

  JetSeries& operator+=(const JetSeries& other);
  JetSeries& operator-=(const JetSeries& other);
  JetSeries& operator*=(double s);

  friend JetSeries operator+(JetSeries a, const JetSeries& b) { return a += b; }
  friend JetSeries operator-(JetSeries a, const JetSeries& b) { return a -= b; }
  friend JetSeries operator-(JetSeries a) { return a *= -1.0; }
  friend JetSeries operator*(JetSeries a, double s) { return a *= s; }
  friend JetSeries operator*(double s, JetSeries a) { return a *= s; }
  friend JetSeries operator*(const JetSeries& a, const JetSeries& b);
  friend JetSeries operator+(JetSeries a, double c);
  friend JetSeries operator+(double c, JetSeries a) { return std::move(a) + c; }
  friend JetSeries operator-(JetSeries a, double c) { return std::move(a) + (-c); }
  friend JetSeries operator-(double c, JetSeries a) { return c + (-std::move(a)); }

  static constexpr int index(int i, int j) noexcept {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }
  static constexpr int size_for(int order) noexcept {
    return (order + 1) * (order + 2) / 2;
  }

private:
  int order_;
  std::vector<double> coeffs_;
};

JetSeries add(const JetSeries& a, const JetSeries& b);
JetSeries mul(const JetSeries& a, const JetSeries& b);
JetSeries reciprocal(const JetSeries& a);
JetSeries sqrt_series(const JetSeries& a);
JetSeries differentiate(const JetSeries& a, Axis axis);

/// a(m00 u + m01 w, m10 u + m11 w), same order.
JetSeries linear_substitute(const JetSeries& a, double m00, double m01, double m10, double m11);

/// Trigonometric polynomial in the basis cos^k and sin*cos^k.
/// Every cos^a sin^b monomial reduces to this basis through sin^2 = 1 - cos^2.
class TrigPoly {
public:
  TrigPoly() = default;

  static TrigPoly constant(double c);
  static TrigPoly monomial(double c, int cos_power, int sin_power);

  double cos_coeff(int k) const;
  double sin_cos_coeff(int k) const;
  int degree() const;

  double evaluate(double theta) const;
  /// Integral over [0, 2pi], exact per monomial.
  double integral() const;
  double max_abs_coeff() const;
  bool is_constant(double tol) const;

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(double s);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
  friend TrigPoly operator*(TrigPoly a, double s) { return a *= s; }
  friend TrigPoly operator*(double s, TrigPoly a) { return a *= s; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

private:
  void add_even(int k, double c);
  void add_odd(int k, double c);
  std::vector<double> even_;
  std::vector<double> odd_;
};

/// Series in r with TrigPoly coefficients: sum_k terms[k](theta) r^k.
struct PolarSeries {
  std::vector<TrigPoly> terms;

  int order() const { return static_cast<int>(terms.size()) - 1; }
  const TrigPoly& operator[](int k) const;
  double evaluate(double r, double theta) const;
};

PolarSeries polar_substitute(const JetSeries& a, double scale_u, double scale_v);

}  // namespace endline
