#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trapgauss/expr.hpp"

using namespace trapgauss;

namespace {
std::mt19937 rng(11);
int ri(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
double rd() { return std::uniform_real_distribution<double>(-2.0, 2.0)(rng); }

ExprPtr random_ast(int depth) {
  auto node = std::make_shared<Expr>();
  int pick = depth <= 0 ? ri(5) : ri(12);
  switch (pick) {
    case 0: node->kind = Expr::Kind::Number; node->number = rd(); break;
    case 1: node->kind = Expr::Kind::VarU; break;
    case 2: node->kind = Expr::Kind::VarV; break;
    case 3: node->kind = Expr::Kind::Pi; break;
    case 4: node->kind = Expr::Kind::E; break;
    case 5: node->kind = Expr::Kind::Neg; node->lhs = random_ast(depth - 1); break;
    case 6: node->kind = Expr::Kind::Add; node->lhs = random_ast(depth - 1); node->rhs = random_ast(depth - 1); break;
    case 7: node->kind = Expr::Kind::Sub; node->lhs = random_ast(depth - 1); node->rhs = random_ast(depth - 1); break;
    case 8: node->kind = Expr::Kind::Mul; node->lhs = random_ast(depth - 1); node->rhs = random_ast(depth - 1); break;
    case 9: node->kind = Expr::Kind::Div; node->lhs = random_ast(depth - 1); node->rhs = random_ast(depth - 1); break;
    case 10: node->kind = Expr::Kind::Pow; node->lhs = random_ast(depth - 1); node->rhs = random_ast(depth - 1); break;
    default:
      node->kind = Expr::Kind::Call;
      node->fn = static_cast<Expr::Fn>(ri(7));
      node->lhs = random_ast(depth - 1);
      break;
  }
  return node;
}
}  // namespace

TEST_CASE("parse the paper expressions") {
  ExprPtr e = parse("exp(1/(u+v))");
  REQUIRE(e->kind == Expr::Kind::Call);
  CHECK(e->fn == Expr::Fn::Exp);
  REQUIRE(e->lhs->kind == Expr::Kind::Div);
  CHECK(e->lhs->lhs->kind == Expr::Kind::Number);
  CHECK(e->lhs->rhs->kind == Expr::Kind::Add);

  ExprPtr e2 = parse("sin(pi*u)*sin(pi*v)");
  REQUIRE(e2->kind == Expr::Kind::Mul);
  CHECK(e2->lhs->kind == Expr::Kind::Call);
  CHECK(e2->rhs->kind == Expr::Kind::Call);
}

TEST_CASE("precedence and associativity") {
  CHECK(print(*parse("u ^ 2 ^ 3")) == "(u^(2^3))");
  CHECK(print(*parse("-u^2")) == "(-(u^2))");
  CHECK(print(*parse("1+2*u")) == "(1+(2*u))");
  CHECK(print(*parse("1-2-u")) == "((1-2)-u)");
  CHECK(print(*parse("2*u/v")) == "((2*u)/v)");
  CHECK(eval_real(*parse("2^3^2"), 0, 0) == 512.0);
  CHECK(eval_real(*parse("-2^2"), 0, 0) == -4.0);
}

TEST_CASE("syntax errors carry a byte offset") {
  CHECK_THROWS_AS(parse("u + "), SyntaxError);
  CHECK_THROWS_AS(parse("(u"), SyntaxError);
  CHECK_THROWS_AS(parse("u v"), SyntaxError);  // implicit multiplication rejected
  CHECK_THROWS_AS(parse("sin u"), SyntaxError);
  CHECK_THROWS_AS(parse("w"), UnknownIdentifier);
  CHECK_THROWS_AS(parse("foo(u)"), UnknownIdentifier);
  try {
    parse("u + $");
  } catch (const SyntaxError& err) {
    CHECK(std::string(err.what()).find("byte 4") != std::string::npos);
  }
}

TEST_CASE("jet evaluation examples") {
  Jet p = eval_jet(*parse("u*v"), 2, 3, 1);
  CHECK(p.value() == 6.0);
  CHECK(p.deriv(1, 0) == 3.0);
  CHECK(p.deriv(0, 1) == 2.0);

  Jet f = eval_jet(*parse("exp(1/(u+v))"), 0.25, 0.25, 2);
  CHECK(f.value() == doctest::Approx(std::exp(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(eval_jet(*parse("ln(u-1)"), 0.5, 0, 2), DomainError);
}

TEST_CASE("integer and non-integer powers") {
  Jet a = eval_jet(*parse("u^2"), -1.5, 0, 2);  // integer exponent works on negatives
  CHECK(a.value() == doctest::Approx(2.25));
  CHECK(a.deriv(1, 0) == doctest::Approx(-3.0));
  Jet b = eval_jet(*parse("u^0.5"), 4.0, 0, 1);
  CHECK(b.value() == doctest::Approx(2.0));
  CHECK_THROWS_AS(eval_jet(*parse("(-u)^0.5"), 1.0, 0, 1), DomainError);
  Jet c = eval_jet(*parse("u^v"), 2.0, 3.0, 1);  // variable exponent via exp/ln
  CHECK(c.value() == doctest::Approx(8.0));
}

TEST_CASE("print-parse round trip on random ASTs") {
  for (int trial = 0; trial < 100; ++trial) {
    ExprPtr ast = random_ast(4);
    std::string s1 = print(*ast);
    ExprPtr re = parse(s1);
    CHECK(print(*re) == s1);
  }
}

TEST_CASE("degree-0 jets equal plain evaluation") {
  int evaluated = 0;
  for (int trial = 0; trial < 300 && evaluated < 100; ++trial) {
    ExprPtr ast = random_ast(3);
    double u = rd(), v = rd();
    double ref;
    Jet j;
    try {
      ref = eval_real(*ast, u, v);
      if (!std::isfinite(ref)) continue;
      j = eval_jet(*ast, u, v, 0);
    } catch (const Error&) {
      continue;  // outside the expression's real domain
    }
    ++evaluated;
    CHECK(j.value() == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK(evaluated >= 100);
}

TEST_CASE("jet derivatives of parsed expressions match finite differences") {
  const char* exprs[] = {"sin(u)*cos(v)", "exp(u*v/4)", "cosh(u)+sinh(v)/2",
                         "sin(pi*u)*sin(pi*v)", "1/(2+u*v)"};
  double step = 1e-5;
  for (const char* s : exprs) {
    ExprPtr e = parse(s);
    for (int trial = 0; trial < 8; ++trial) {
      double u = rd() / 2, v = rd() / 2;
      Jet j = eval_jet(*e, u, v, 2);
      double du = (eval_real(*e, u + step, v) - eval_real(*e, u - step, v)) / (2 * step);
      double dv = (eval_real(*e, u, v + step) - eval_real(*e, u, v - step)) / (2 * step);
      CHECK(j.deriv(1, 0) == doctest::Approx(du).epsilon(1e-6));
      CHECK(j.deriv(0, 1) == doctest::Approx(dv).epsilon(1e-6));
    }
  }
}
