#include "wts/jet.hpp"

#include <cmath>
#include <stdexcept>

#include "wts/errors.hpp"

namespace wts {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw std::invalid_argument("jet order must be in [0, " +
                                std::to_string(kMaxJetOrder) + "], got " +
                                std::to_string(order));
  }
}

void check_compatible(const Jet& a, const Jet& b) {
  if (a.order() != b.order() || a.base_point() != b.base_point()) {
    throw std::invalid_argument("jet operands have mismatched order or base point");
  }
}

}  // namespace

Jet::Jet(double base_point, int order) : base_(base_point) {
  check_order(order);
  c_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Jet Jet::constant(double value, double base_point, int order) {
  Jet j(base_point, order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double base_point, int order) {
  Jet j(base_point, order);
  j.c_[0] = base_point;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

double Jet::derivative(int k) const {
  if (k < 0 || k > order()) {
    throw std::invalid_argument("derivative order out of range");
  }
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return c_[static_cast<std::size_t>(k)] * fact;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& v : r.c_) v = -v;
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  Jet r = a;
  for (int k = 0; k <= a.order(); ++k) r.coeff(k) += b.coeff(k);
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  Jet r = a;
  for (int k = 0; k <= a.order(); ++k) r.coeff(k) -= b.coeff(k);
  return r;
}

// Cauchy product truncated at the jet order.
Jet operator*(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  Jet r(a.base_point(), a.order());
  for (int k = 0; k <= a.order(); ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a.coeff(j) * b.coeff(k - j);
    r.coeff(k) = s;
  }
  return r;
}

// q = a / b solved from a = q * b:
//   q[k] = (a[k] - sum_{j=1..k} b[j] q[k-j]) / b[0]
Jet operator/(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  if (b.value() == 0.0) {
    throw DomainError("division by zero");
  }
  Jet q(a.base_point(), a.order());
  for (int k = 0; k <= a.order(); ++k) {
    double s = a.coeff(k);
    for (int j = 1; j <= k; ++j) s -= b.coeff(j) * q.coeff(k - j);
    q.coeff(k) = s / b.value();
  }
  return q;
}

Jet operator+(const Jet& a, double s) {
  Jet r = a;
  r.coeff(0) += s;
  return r;
}
Jet operator+(double s, const Jet& b) { return b + s; }
Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& b) { return -b + s; }
Jet operator*(const Jet& a, double s) {
  Jet r = a;
  for (int k = 0; k <= r.order(); ++k) r.coeff(k) *= s;
  return r;
}
Jet operator*(double s, const Jet& b) { return b * s; }
Jet operator/(const Jet& a, double s) {
  if (s == 0.0) throw DomainError("division by zero");
  return a * (1.0 / s);
}
Jet operator/(double s, const Jet& b) {
  return Jet::constant(s, b.base_point(), b.order()) / b;
}

// b = exp(a):  b' = a' b, i.e.  k b[k] = sum_{j=1..k} j a[j] b[k-j].
Jet exp(const Jet& a) {
  Jet b(a.base_point(), a.order());
  b.coeff(0) = std::exp(a.value());
  for (int k = 1; k <= a.order(); ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.coeff(j) * b.coeff(k - j);
    b.coeff(k) = s / k;
  }
  return b;
}

// g = log(a):  a' = g' a, i.e.  g[k] = (a[k] - (1/k) sum_{j=1..k-1} j g[j] a[k-j]) / a[0].
Jet log(const Jet& a) {
  if (!(a.value() > 0.0)) {
    throw DomainError("log of non-positive value");
  }
  Jet g(a.base_point(), a.order());
  g.coeff(0) = std::log(a.value());
  for (int k = 1; k <= a.order(); ++k) {
    double s = a.coeff(k);
    for (int j = 1; j < k; ++j) s -= (static_cast<double>(j) / k) * g.coeff(j) * a.coeff(k - j);
    g.coeff(k) = s / a.value();
  }
  return g;
}

// s = sqrt(a) solved from s*s = a:
//   s[k] = (a[k] - sum_{j=1..k-1} s[j] s[k-j]) / (2 s[0])
Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0)) {
    throw DomainError("sqrt of non-positive value");
  }
  Jet s(a.base_point(), a.order());
  s.coeff(0) = std::sqrt(a.value());
  for (int k = 1; k <= a.order(); ++k) {
    double acc = a.coeff(k);
    for (int j = 1; j < k; ++j) acc -= s.coeff(j) * s.coeff(k - j);
    s.coeff(k) = acc / (2.0 * s.coeff(0));
  }
  return s;
}

namespace {

// sinh/cosh propagate as a coupled pair: s' = a' c, c' = a' s.
void sinh_cosh(const Jet& a, Jet& s, Jet& c) {
  s = Jet(a.base_point(), a.order());
  c = Jet(a.base_point(), a.order());
  s.coeff(0) = std::sinh(a.value());
  c.coeff(0) = std::cosh(a.value());
  for (int k = 1; k <= a.order(); ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a.coeff(j) * c.coeff(k - j);
      cc += j * a.coeff(j) * s.coeff(k - j);
    }
    s.coeff(k) = ss / k;
    c.coeff(k) = cc / k;
  }
}

}  // namespace

Jet sinh(const Jet& a) {
  Jet s(a.base_point(), a.order()), c(a.base_point(), a.order());
  sinh_cosh(a, s, c);
  return s;
}

Jet cosh(const Jet& a) {
  Jet s(a.base_point(), a.order()), c(a.base_point(), a.order());
  sinh_cosh(a, s, c);
  return c;
}

Jet tanh(const Jet& a) {
  Jet s(a.base_point(), a.order()), c(a.base_point(), a.order());
  sinh_cosh(a, s, c);
  return s / c;  // cosh never vanishes
}

Jet pow(const Jet& a, long long n) {
  if (n == 0) return Jet::constant(1.0, a.base_point(), a.order());
  bool invert = n < 0;
  unsigned long long m = invert ? -static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  if (invert && a.value() == 0.0) {
    throw DomainError("negative power of zero");
  }
  Jet result = Jet::constant(1.0, a.base_point(), a.order());
  Jet base = a;
  while (m > 0) {
    if (m & 1ULL) result = result * base;
    base = base * base;
    m >>= 1ULL;
  }
  if (invert) return Jet::constant(1.0, a.base_point(), a.order()) / result;
  return result;
}

Jet pow(const Jet& a, const Jet& b) {
  if (!(a.value() > 0.0)) {
    throw DomainError("power with non-positive base requires an integer exponent");
  }
  return exp(b * log(a));
}

}  // namespace wts
