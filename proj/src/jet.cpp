#include "trapgauss/jet.hpp"

#include <cmath>
#include <string>

namespace trapgauss {

namespace {
constexpr double kDivTol = 1e-13;

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}
}  // namespace

Jet Jet::constant(double value, int degree, double u0, double v0) {
  Jet j(degree, u0, v0);
  j.c_[0] = value;
  return j;
}

Jet Jet::var_u(double u0, double v0, int degree) {
  Jet j = constant(u0, degree, u0, v0);
  if (degree >= 1) j.coeff(1, 0) = 1.0;
  return j;
}

Jet Jet::var_v(double u0, double v0, int degree) {
  Jet j = constant(v0, degree, u0, v0);
  if (degree >= 1) j.coeff(0, 1) = 1.0;
  return j;
}

Jet Jet::truncated(int degree) const {
  if (degree >= deg_) return *this;
  Jet r(degree, u0_, v0_);
  for (int k = 0; k <= degree; ++k)
    for (int b = 0; b <= k; ++b) r.coeff(k - b, b) = coeff(k - b, b);
  return r;
}

double Jet::deriv(int a, int b) const {
  if (a + b > deg_) return 0.0;
  return c_[slot(a, b)] * factorial(a) * factorial(b);
}

void Jet::check_compatible(const Jet& o) const {
  if (deg_ != o.deg_)
    throw DomainError("jet degree mismatch: " + std::to_string(deg_) + " vs " + std::to_string(o.deg_));
  if (u0_ != o.u0_ || v0_ != o.v0_) throw DomainError("jet base point mismatch");
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double a) {
  for (double& x : c_) x *= a;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  int d = a.deg_;
  Jet r(d, a.u0_, a.v0_);
  for (int ka = 0; ka <= d; ++ka)
    for (int ba = 0; ba <= ka; ++ba) {
      double ca = a.c_[Jet::slot(ka - ba, ba)];
      if (ca == 0.0) continue;
      for (int kb = 0; kb + ka <= d; ++kb)
        for (int bb = 0; bb <= kb; ++bb)
          r.c_[Jet::slot(ka - ba + kb - bb, ba + bb)] += ca * b.c_[Jet::slot(kb - bb, bb)];
    }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  if (std::abs(b.value()) <= kDivTol)
    throw DivisionNearZero("divisor value " + std::to_string(b.value()));
  int d = a.deg_;
  Jet r(d, a.u0_, a.v0_);
  // graded long division: r*b = a solved coefficient by coefficient
  for (int k = 0; k <= d; ++k)
    for (int bb = 0; bb <= k; ++bb) {
      int aa = k - bb;
      double acc = a.c_[Jet::slot(aa, bb)];
      for (int k2 = 0; k2 < k; ++k2)
        for (int b2 = 0; b2 <= k2; ++b2) {
          int a2 = k2 - b2;
          if (a2 > aa || b2 > bb) continue;
          acc -= r.c_[Jet::slot(a2, b2)] * b.c_[Jet::slot(aa - a2, bb - b2)];
        }
      r.c_[Jet::slot(aa, bb)] = acc / b.value();
    }
  return r;
}

Jet operator-(double s, const Jet& a) {
  Jet r = -a;
  r += s;
  return r;
}

Jet operator/(double s, const Jet& a) {
  return Jet::constant(s, a.degree(), a.base_u(), a.base_v()) / a;
}

Jet jet_partial(const Jet& a, Var dir) {
  if (a.degree() < 1) throw DegreeExhausted("cannot differentiate a degree-0 jet");
  int d = a.degree() - 1;
  Jet r(d, a.base_u(), a.base_v());
  for (int k = 0; k <= d; ++k)
    for (int b = 0; b <= k; ++b) {
      int aa = k - b;
      if (dir == Var::U)
        r.coeff(aa, b) = (aa + 1) * a.coeff(aa + 1, b);
      else
        r.coeff(aa, b) = (b + 1) * a.coeff(aa, b + 1);
    }
  return r;
}

namespace {

// Composition with a univariate Taylor series t(x) around a's value:
// result = sum_k t[k] * (a - a0)^k, truncated.
Jet compose(const Jet& a, const std::vector<double>& t) {
  int d = a.degree();
  Jet p = a;
  p -= a.value();  // zero constant term
  // Horner over the truncated algebra
  Jet r = Jet::constant(t[d], d, a.base_u(), a.base_v());
  for (int k = d - 1; k >= 0; --k) {
    r = r * p;
    r += t[k];
  }
  return r;
}

}  // namespace

Jet sin(const Jet& a) {
  int d = a.degree();
  double x = a.value();
  std::vector<double> t(d + 1);
  double cyc[4] = {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
  for (int k = 0; k <= d; ++k) t[k] = cyc[k % 4] / factorial(k);
  return compose(a, t);
}

Jet cos(const Jet& a) {
  int d = a.degree();
  double x = a.value();
  std::vector<double> t(d + 1);
  double cyc[4] = {std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
  for (int k = 0; k <= d; ++k) t[k] = cyc[k % 4] / factorial(k);
  return compose(a, t);
}

Jet sinh(const Jet& a) {
  int d = a.degree();
  double s = std::sinh(a.value()), c = std::cosh(a.value());
  std::vector<double> t(d + 1);
  for (int k = 0; k <= d; ++k) t[k] = (k % 2 ? c : s) / factorial(k);
  return compose(a, t);
}

Jet cosh(const Jet& a) {
  int d = a.degree();
  double s = std::sinh(a.value()), c = std::cosh(a.value());
  std::vector<double> t(d + 1);
  for (int k = 0; k <= d; ++k) t[k] = (k % 2 ? s : c) / factorial(k);
  return compose(a, t);
}

Jet exp(const Jet& a) {
  int d = a.degree();
  double e = std::exp(a.value());
  std::vector<double> t(d + 1);
  for (int k = 0; k <= d; ++k) t[k] = e / factorial(k);
  return compose(a, t);
}

Jet log(const Jet& a) {
  double x = a.value();
  if (x <= 0) throw DomainError("log of non-positive value " + std::to_string(x));
  int d = a.degree();
  std::vector<double> t(d + 1);
  t[0] = std::log(x);
  double xp = x;
  for (int k = 1; k <= d; ++k) {
    t[k] = (k % 2 ? 1.0 : -1.0) / (k * xp);
    xp *= x;
  }
  return compose(a, t);
}

Jet sqrt(const Jet& a) {
  double x = a.value();
  if (x <= 0) throw DomainError("sqrt of non-positive value " + std::to_string(x));
  int d = a.degree();
  std::vector<double> t(d + 1);
  // binomial series: t[k] = C(1/2, k) x^(1/2-k)
  double coef = std::sqrt(x);
  t[0] = coef;
  for (int k = 1; k <= d; ++k) {
    coef *= (0.5 - (k - 1)) / k / x;
    t[k] = coef;
  }
  return compose(a, t);
}

Jet pow(const Jet& a, double r) {
  double n = std::round(r);
  if (std::abs(r - n) <= 1e-12 && std::abs(n) <= 64) {
    int e = static_cast<int>(std::abs(n));
    Jet acc = Jet::constant(1.0, a.degree(), a.base_u(), a.base_v());
    for (int i = 0; i < e; ++i) acc = acc * a;
    if (n < 0) return 1.0 / acc;
    return acc;
  }
  return exp(r * log(a));
}

}  // namespace trapgauss
