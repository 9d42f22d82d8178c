#include "trapgauss/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace trapgauss {

namespace {

ExprPtr make(Expr::Kind k, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

ExprPtr make_number(double x) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Number;
  e->number = x;
  return e;
}

ExprPtr make_call(Expr::Fn fn, ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Call;
  e->fn = fn;
  e->lhs = std::move(arg);
  return e;
}

const std::map<std::string, Expr::Fn> kFunctions = {
    {"sin", Expr::Fn::Sin},   {"cos", Expr::Fn::Cos}, {"sinh", Expr::Fn::Sinh},
    {"cosh", Expr::Fn::Cosh}, {"exp", Expr::Fn::Exp}, {"ln", Expr::Fn::Ln},
    {"sqrt", Expr::Fn::Sqrt}};

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError(msg + " at byte " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (accept('+'))
        e = make(Expr::Kind::Add, e, term());
      else if (accept('-'))
        e = make(Expr::Kind::Sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      if (accept('*'))
        e = make(Expr::Kind::Mul, e, factor());
      else if (accept('/'))
        e = make(Expr::Kind::Div, e, factor());
      else
        return e;
    }
  }

  ExprPtr factor() {
    if (accept('-')) return make(Expr::Kind::Neg, factor());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (accept('^')) return make(Expr::Kind::Pow, base, factor());
    return base;
  }

  ExprPtr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("expected a number, identifier or '(', got '") + c + "'");
  }

  ExprPtr number() {
    skip_ws();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double x = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<size_t>(end - begin);
    return make_number(x);
  }

  ExprPtr identifier() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "u") return make(Expr::Kind::VarU);
    if (name == "v") return make(Expr::Kind::VarV);
    if (name == "pi") return make(Expr::Kind::Pi);
    if (name == "e") return make(Expr::Kind::E);
    auto it = kFunctions.find(name);
    if (it == kFunctions.end())
      throw UnknownIdentifier("'" + name + "' at byte " + std::to_string(start));
    if (!accept('(')) fail("expected '(' after function " + name);
    ExprPtr arg = expr();
    if (!accept(')')) fail("expected ')'");
    return make_call(it->second, arg);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

const char* fn_name(Expr::Fn fn) {
  switch (fn) {
    case Expr::Fn::Sin: return "sin";
    case Expr::Fn::Cos: return "cos";
    case Expr::Fn::Sinh: return "sinh";
    case Expr::Fn::Cosh: return "cosh";
    case Expr::Fn::Exp: return "exp";
    case Expr::Fn::Ln: return "ln";
    case Expr::Fn::Sqrt: return "sqrt";
  }
  return "?";
}

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: {
      // negative literals reparse as a unary minus; print them that way
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", std::abs(e.number));
      return std::signbit(e.number) ? "(-" + std::string(buf) + ")" : std::string(buf);
    }
    case Expr::Kind::VarU: return "u";
    case Expr::Kind::VarV: return "v";
    case Expr::Kind::Pi: return "pi";
    case Expr::Kind::E: return "e";
    case Expr::Kind::Neg: return "(-" + print(*e.lhs) + ")";
    case Expr::Kind::Add: return "(" + print(*e.lhs) + "+" + print(*e.rhs) + ")";
    case Expr::Kind::Sub: return "(" + print(*e.lhs) + "-" + print(*e.rhs) + ")";
    case Expr::Kind::Mul: return "(" + print(*e.lhs) + "*" + print(*e.rhs) + ")";
    case Expr::Kind::Div: return "(" + print(*e.lhs) + "/" + print(*e.rhs) + ")";
    case Expr::Kind::Pow: return "(" + print(*e.lhs) + "^" + print(*e.rhs) + ")";
    case Expr::Kind::Call: return std::string(fn_name(e.fn)) + "(" + print(*e.lhs) + ")";
  }
  return "?";
}

double eval_real(const Expr& e, double u, double v) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.number;
    case Expr::Kind::VarU: return u;
    case Expr::Kind::VarV: return v;
    case Expr::Kind::Pi: return M_PI;
    case Expr::Kind::E: return M_E;
    case Expr::Kind::Neg: return -eval_real(*e.lhs, u, v);
    case Expr::Kind::Add: return eval_real(*e.lhs, u, v) + eval_real(*e.rhs, u, v);
    case Expr::Kind::Sub: return eval_real(*e.lhs, u, v) - eval_real(*e.rhs, u, v);
    case Expr::Kind::Mul: return eval_real(*e.lhs, u, v) * eval_real(*e.rhs, u, v);
    case Expr::Kind::Div: return eval_real(*e.lhs, u, v) / eval_real(*e.rhs, u, v);
    case Expr::Kind::Pow: return std::pow(eval_real(*e.lhs, u, v), eval_real(*e.rhs, u, v));
    case Expr::Kind::Call: {
      double x = eval_real(*e.lhs, u, v);
      switch (e.fn) {
        case Expr::Fn::Sin: return std::sin(x);
        case Expr::Fn::Cos: return std::cos(x);
        case Expr::Fn::Sinh: return std::sinh(x);
        case Expr::Fn::Cosh: return std::cosh(x);
        case Expr::Fn::Exp: return std::exp(x);
        case Expr::Fn::Ln: return std::log(x);
        case Expr::Fn::Sqrt: return std::sqrt(x);
      }
    }
  }
  return 0;
}

namespace {
bool jet_is_constant(const Jet& j) {
  for (int k = 1; k <= j.degree(); ++k)
    for (int b = 0; b <= k; ++b)
      if (j.coeff(k - b, b) != 0.0) return false;
  return true;
}

[[noreturn]] void rethrow_with_context(const Error& err, const Expr& e) {
  if (err.name() == "DomainError" || err.name() == "DivisionNearZero")
    throw DomainError(err.what() + std::string(" in subexpression ") + print(e));
  throw;
}
}  // namespace

Jet eval_jet(const Expr& e, double u, double v, int degree) {
  switch (e.kind) {
    case Expr::Kind::Number: return Jet::constant(e.number, degree, u, v);
    case Expr::Kind::VarU: return Jet::var_u(u, v, degree);
    case Expr::Kind::VarV: return Jet::var_v(u, v, degree);
    case Expr::Kind::Pi: return Jet::constant(M_PI, degree, u, v);
    case Expr::Kind::E: return Jet::constant(M_E, degree, u, v);
    case Expr::Kind::Neg: return -eval_jet(*e.lhs, u, v, degree);
    case Expr::Kind::Add: return eval_jet(*e.lhs, u, v, degree) + eval_jet(*e.rhs, u, v, degree);
    case Expr::Kind::Sub: return eval_jet(*e.lhs, u, v, degree) - eval_jet(*e.rhs, u, v, degree);
    case Expr::Kind::Mul: return eval_jet(*e.lhs, u, v, degree) * eval_jet(*e.rhs, u, v, degree);
    case Expr::Kind::Div:
      try {
        return eval_jet(*e.lhs, u, v, degree) / eval_jet(*e.rhs, u, v, degree);
      } catch (const Error& err) {
        rethrow_with_context(err, e);
      }
    case Expr::Kind::Pow: {
      Jet base = eval_jet(*e.lhs, u, v, degree);
      Jet ex = eval_jet(*e.rhs, u, v, degree);
      try {
        if (jet_is_constant(ex)) return pow(base, ex.value());
        return exp(ex * log(base));
      } catch (const Error& err) {
        rethrow_with_context(err, e);
      }
    }
    case Expr::Kind::Call: {
      Jet x = eval_jet(*e.lhs, u, v, degree);
      try {
        switch (e.fn) {
          case Expr::Fn::Sin: return sin(x);
          case Expr::Fn::Cos: return cos(x);
          case Expr::Fn::Sinh: return sinh(x);
          case Expr::Fn::Cosh: return cosh(x);
          case Expr::Fn::Exp: return exp(x);
          case Expr::Fn::Ln: return log(x);
          case Expr::Fn::Sqrt: return sqrt(x);
        }
      } catch (const Error& err) {
        rethrow_with_context(err, e);
      }
    }
  }
  throw DomainError("unreachable expression kind");
}

}  // namespace trapgauss
