#pragma once
#include <vector>

#include "trapgauss/errors.hpp"

namespace trapgauss {

// Bivariate truncated Taylor expansion around a base point. Coefficients are
// stored in normalized form c[(a,b)] = d^a_u d^b_v f / (a! b!), so products are
// plain truncated polynomial convolutions. Slot order: graded, (a,b) with
// k = a+b ascending, b ascending within a block.
class Jet {
 public:
  Jet() = default;
  Jet(int degree, double u0, double v0)
      : deg_(degree), u0_(u0), v0_(v0), c_(size_for(degree), 0.0) {}

  static Jet constant(double value, int degree, double u0, double v0);
  static Jet var_u(double u0, double v0, int degree);
  static Jet var_v(double u0, double v0, int degree);

  static int size_for(int degree) { return (degree + 1) * (degree + 2) / 2; }
  static int slot(int a, int b) {
    int k = a + b;
    return k * (k + 1) / 2 + b;
  }

  int degree() const { return deg_; }
  double base_u() const { return u0_; }
  double base_v() const { return v0_; }

  // copy truncated to a lower degree
  Jet truncated(int degree) const;

  double coeff(int a, int b) const { return a + b <= deg_ ? c_[slot(a, b)] : 0.0; }
  double& coeff(int a, int b) { return c_[slot(a, b)]; }

  double value() const { return c_[0]; }
  // true partial-derivative values at the base point (factorials reinstated)
  double deriv(int a, int b) const;
  double du() const { return deriv(1, 0); }
  double dv() const { return deriv(0, 1); }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double a);
  Jet& operator+=(double a) { c_[0] += a; return *this; }
  Jet& operator-=(double a) { c_[0] -= a; return *this; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator/(double s, const Jet& a);
  friend Jet operator-(Jet a) { return a *= -1.0; }

 private:
  void check_compatible(const Jet& o) const;
  int deg_ = 0;
  double u0_ = 0, v0_ = 0;
  std::vector<double> c_{0.0};
};

enum class Var { U, V };

// Derivative jet of degree d-1 (index shift with factorial rescaling).
Jet jet_partial(const Jet& a, Var dir);

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
// Integer exponents by repeated multiplication, anything else via exp(r*log(a)).
Jet pow(const Jet& a, double r);

}  // namespace trapgauss
