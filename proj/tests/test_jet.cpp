#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "trapgauss/jet.hpp"

using namespace trapgauss;

namespace {

// central finite-difference oracle for first and second partials
struct FdOracle {
  std::function<double(double, double)> f;
  double step = 1e-5;
  double du(double u, double v) const { return (f(u + step, v) - f(u - step, v)) / (2 * step); }
  double dv(double u, double v) const { return (f(u, v + step) - f(u, v - step)) / (2 * step); }
  double duu(double u, double v) const {
    return (f(u + step, v) - 2 * f(u, v) + f(u - step, v)) / (step * step);
  }
};

std::mt19937 rng(7);
double rnd(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Jet random_jet(int deg, double u0, double v0) {
  Jet j(deg, u0, v0);
  for (int k = 0; k <= deg; ++k)
    for (int b = 0; b <= k; ++b) j.coeff(k - b, b) = rnd();
  return j;
}

}  // namespace

TEST_CASE("product of the coordinate jets") {
  Jet p = Jet::var_u(1, 2, 3) * Jet::var_v(1, 2, 3);
  CHECK(p.value() == 2.0);
  CHECK(p.deriv(1, 0) == 2.0);
  CHECK(p.deriv(0, 1) == 1.0);
  CHECK(p.deriv(1, 1) == 1.0);
  CHECK(p.deriv(2, 0) == 0.0);
  CHECK(p.deriv(3, 0) == 0.0);
  CHECK(p.deriv(2, 1) == 0.0);
}

TEST_CASE("additive inverse cancels") {
  Jet f = random_jet(3, 0.3, -0.4);
  Jet z = f + (-f);
  for (int k = 0; k <= 3; ++k)
    for (int b = 0; b <= k; ++b) CHECK(z.coeff(k - b, b) == 0.0);
}

TEST_CASE("reciprocal of u+v") {
  double u = 0.25, v = 0.25;
  Jet q = 1.0 / (Jet::var_u(u, v, 3) + Jet::var_v(u, v, 3));
  CHECK(q.value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(q.deriv(1, 0) == doctest::Approx(-4.0).epsilon(1e-14));
  FdOracle fd{[](double a, double b) { return 1.0 / (a + b); }};
  CHECK(q.deriv(1, 0) == doctest::Approx(fd.du(u, v)).epsilon(1e-6));
  CHECK(q.deriv(0, 1) == doctest::Approx(fd.dv(u, v)).epsilon(1e-6));
  CHECK(q.deriv(2, 0) == doctest::Approx(fd.duu(u, v)).epsilon(1e-5));
}

TEST_CASE("division by a near-zero value") {
  Jet tiny = Jet::constant(1e-15, 3, 0, 0);
  CHECK_THROWS_AS(Jet::constant(1.0, 3, 0, 0) / tiny, DivisionNearZero);
}

TEST_CASE("exp of the zero jet") {
  Jet e = exp(Jet(3, 0.1, 0.2));
  CHECK(e.value() == 1.0);
  CHECK(e.deriv(1, 0) == 0.0);
  CHECK(e.deriv(2, 1) == 0.0);
}

TEST_CASE("exp(1/(u+v)) jets") {
  double u = 0.25, v = 0.25;
  Jet f = exp(1.0 / (Jet::var_u(u, v, 3) + Jet::var_v(u, v, 3)));
  double e2 = std::exp(2.0);
  CHECK(f.value() == doctest::Approx(e2).epsilon(1e-14));
  CHECK(f.deriv(1, 0) == doctest::Approx(-4.0 * e2).epsilon(1e-13));
  FdOracle fd{[](double a, double b) { return std::exp(1.0 / (a + b)); }};
  CHECK(f.deriv(1, 0) == doctest::Approx(fd.du(u, v)).epsilon(1e-6));
  CHECK(f.deriv(2, 0) == doctest::Approx(fd.duu(u, v)).epsilon(1e-5));
}

TEST_CASE("eigenfunction jets at the square center") {
  double u = 0.5, v = 0.5;
  Jet f = sin(M_PI * Jet::var_u(u, v, 3)) * sin(M_PI * Jet::var_v(u, v, 3));
  CHECK(f.value() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.deriv(1, 0) == doctest::Approx(0.0));
  CHECK(f.deriv(2, 0) == doctest::Approx(-M_PI * M_PI).epsilon(1e-13));
}

TEST_CASE("jet partial derivatives") {
  {
    Jet u2 = Jet::var_u(0.7, 0, 3);
    Jet d = jet_partial(u2 * u2, Var::U);
    CHECK(d.degree() == 2);
    CHECK(d.value() == doctest::Approx(1.4));
    CHECK(d.deriv(1, 0) == doctest::Approx(2.0));
  }
  {
    double u = 0.3;
    Jet s = sin(M_PI * Jet::var_u(u, 0, 3));
    Jet dd = jet_partial(jet_partial(s, Var::U), Var::U);
    CHECK(dd.degree() == 1);
    CHECK(dd.value() == doctest::Approx(-M_PI * M_PI * std::sin(M_PI * u)).epsilon(1e-13));
    CHECK(dd.deriv(1, 0) == doctest::Approx(-M_PI * M_PI * M_PI * std::cos(M_PI * u)).epsilon(1e-13));
  }
  {
    Jet c = Jet::constant(5.0, 2, 0, 0);
    Jet d = jet_partial(c, Var::U);
    CHECK(d.value() == 0.0);
    CHECK(d.deriv(0, 1) == 0.0);
  }
  CHECK_THROWS_AS(jet_partial(Jet::constant(1.0, 0, 0, 0), Var::V), DegreeExhausted);
}

TEST_CASE("random cubic polynomials differentiate exactly") {
  for (int trial = 0; trial < 50; ++trial) {
    double c[4][4] = {};
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) c[a][b] = rnd();
    double u0 = rnd(), v0 = rnd();
    Jet ju = Jet::var_u(u0, v0, 3), jv = Jet::var_v(u0, v0, 3);
    Jet p = Jet::constant(0, 3, u0, v0);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) {
        Jet term = Jet::constant(c[a][b], 3, u0, v0);
        for (int i = 0; i < a; ++i) term = term * ju;
        for (int i = 0; i < b; ++i) term = term * jv;
        p += term;
      }
    // analytic partial: d^s_u d^t_v p / (s! t!)
    auto binom = [](int n, int k) {
      double r = 1;
      for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
      return r;
    };
    for (int s = 0; s <= 3; ++s)
      for (int t = 0; s + t <= 3; ++t) {
        double expect = 0;
        for (int a = s; a <= 3; ++a)
          for (int b = t; a + b <= 3; ++b)
            expect += c[a][b] * binom(a, s) * binom(b, t) * std::pow(u0, a - s) * std::pow(v0, b - t);
        CHECK(p.coeff(s, t) == doctest::Approx(expect).epsilon(1e-12));
      }
  }
}

TEST_CASE("smooth compositions match finite differences") {
  struct Case {
    std::function<Jet(double, double)> jet;
    std::function<double(double, double)> ref;
  };
  std::vector<Case> cases = {
      {[](double u, double v) { return sinh(Jet::var_u(u, v, 3)) * cos(Jet::var_v(u, v, 3)); },
       [](double u, double v) { return std::sinh(u) * std::cos(v); }},
      {[](double u, double v) {
         return sqrt(Jet::constant(2, 3, u, v) + cosh(Jet::var_u(u, v, 3)));
       },
       [](double u, double) { return std::sqrt(2 + std::cosh(u)); }},
      {[](double u, double v) {
         return log(Jet::constant(1.5, 3, u, v) + sin(Jet::var_u(u, v, 3) * Jet::var_v(u, v, 3)));
       },
       [](double u, double v) { return std::log(1.5 + std::sin(u * v)); }},
  };
  for (auto& cs : cases)
    for (int trial = 0; trial < 10; ++trial) {
      double u = rnd(-0.8, 0.8), v = rnd(-0.8, 0.8);
      Jet j = cs.jet(u, v);
      FdOracle fd{cs.ref};
      CHECK(j.value() == doctest::Approx(cs.ref(u, v)).epsilon(1e-12));
      CHECK(j.deriv(1, 0) == doctest::Approx(fd.du(u, v)).epsilon(1e-6));
      CHECK(j.deriv(0, 1) == doctest::Approx(fd.dv(u, v)).epsilon(1e-6));
      CHECK(j.deriv(2, 0) == doctest::Approx(fd.duu(u, v)).epsilon(1e-5));
    }
}

TEST_CASE("multiplication is commutative and associative") {
  for (int trial = 0; trial < 20; ++trial) {
    Jet a = random_jet(3, 0.1, 0.2), b = random_jet(3, 0.1, 0.2), c = random_jet(3, 0.1, 0.2);
    Jet ab = a * b, ba = b * a;
    Jet abc1 = (a * b) * c, abc2 = a * (b * c);
    for (int k = 0; k <= 3; ++k)
      for (int t = 0; t <= k; ++t) {
        CHECK(ab.coeff(k - t, t) == doctest::Approx(ba.coeff(k - t, t)).epsilon(1e-14));
        CHECK(abc1.coeff(k - t, t) == doctest::Approx(abc2.coeff(k - t, t)).epsilon(1e-12));
      }
  }
}

TEST_CASE("powers") {
  Jet a = Jet::constant(1.2, 3, 0, 0) + Jet::var_u(0, 0, 3);
  Jet cube = pow(a, 3.0);
  Jet ref = a * a * a;
  for (int k = 0; k <= 3; ++k)
    for (int t = 0; t <= k; ++t)
      CHECK(cube.coeff(k - t, t) == doctest::Approx(ref.coeff(k - t, t)).epsilon(1e-14));

  Jet inv2 = pow(a, -2.0);
  Jet ref2 = 1.0 / (a * a);
  CHECK(inv2.value() == doctest::Approx(ref2.value()).epsilon(1e-14));
  CHECK(inv2.deriv(1, 0) == doctest::Approx(ref2.deriv(1, 0)).epsilon(1e-13));

  Jet half = pow(a, 0.5);
  Jet refs = sqrt(a);
  CHECK(half.value() == doctest::Approx(refs.value()).epsilon(1e-13));
  CHECK(half.deriv(1, 0) == doctest::Approx(refs.deriv(1, 0)).epsilon(1e-12));

  CHECK_THROWS_AS(log(Jet::constant(-1, 3, 0, 0)), DomainError);
  CHECK_THROWS_AS(sqrt(Jet::constant(-1, 3, 0, 0)), DomainError);
  CHECK_THROWS_AS(pow(Jet::constant(-1, 3, 0, 0), 0.5), DomainError);
}
