#pragma once

#include <vector>

namespace wts {

// Highest derivative order supported by the Taylor-jet arithmetic.
inline constexpr int kMaxJetOrder = 16;

// Truncated Taylor series of a function at a base point:
//
//   f(x0 + h) = c[0] + c[1] h + ... + c[K] h^K + O(h^{K+1})
//
// so c[k] = f^(k)(x0) / k!.  Arithmetic on jets propagates all coefficients
// through the standard power-series recurrences, which gives exact
// derivatives (up to rounding) without symbolic differentiation or
// finite-difference noise.
class Jet {
public:
  // Zero jet of the given order (all coefficients 0).
  Jet(double base_point, int order);

  // Jet of the constant function value.
  static Jet constant(double value, double base_point, int order);

  // Jet of the identity function x at base_point.
  static Jet variable(double base_point, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double base_point() const { return base_; }

  double value() const { return c_[0]; }
  double coeff(int k) const { return c_[k]; }
  double& coeff(int k) { return c_[k]; }
  const std::vector<double>& coeffs() const { return c_; }

  // k-th derivative at the base point: k! * c[k].
  double derivative(int k) const;

  Jet operator-() const;

private:
  double base_;
  std::vector<double> c_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);

Jet operator+(const Jet& a, double s);
Jet operator+(double s, const Jet& b);
Jet operator-(const Jet& a, double s);
Jet operator-(double s, const Jet& b);
Jet operator*(const Jet& a, double s);
Jet operator*(double s, const Jet& b);
Jet operator/(const Jet& a, double s);
Jet operator/(double s, const Jet& b);

Jet exp(const Jet& a);
Jet log(const Jet& a);   // requires a.value() > 0
Jet sqrt(const Jet& a);  // requires a.value() > 0
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);

// Integer power by repeated multiplication (works for any base value;
// negative exponents require a nonzero base).
Jet pow(const Jet& a, long long n);

// General power exp(b * log(a)); requires a.value() > 0.
Jet pow(const Jet& a, const Jet& b);

}  // namespace wts
