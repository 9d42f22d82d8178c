#pragma once
#include <memory>
#include <string>

#include "trapgauss/jet.hpp"

namespace trapgauss {

// AST for phi(u,v) expressions. Grammar (LL(1), whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?          (right-associative, binds tightest)
//   atom   := number | 'u' | 'v' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
//   fn     := sin | cos | sinh | cosh | exp | ln | sqrt
// Implicit multiplication is rejected.
struct Expr {
  enum class Kind { Number, VarU, VarV, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Fn { Sin, Cos, Sinh, Cosh, Exp, Ln, Sqrt };

  Kind kind;
  double number = 0;
  Fn fn = Fn::Sin;
  std::shared_ptr<const Expr> lhs, rhs;  // unary/call use lhs only
};

using ExprPtr = std::shared_ptr<const Expr>;

// Throws SyntaxError (message carries the byte offset) or UnknownIdentifier.
ExprPtr parse(const std::string& text);

// Canonical fully parenthesized form; parse(print(e)) reproduces e.
std::string print(const Expr& e);

double eval_real(const Expr& e, double u, double v);
Jet eval_jet(const Expr& e, double u, double v, int degree);

}  // namespace trapgauss
