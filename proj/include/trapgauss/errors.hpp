#pragma once
#include <stdexcept>
#include <string>

namespace trapgauss {

// Stable exit-code classes, one per error family (documented in the README).
enum class ErrorClass : int {
  Usage = 2,
  Expression = 3,
  Evaluation = 4,
  Geometry = 5,
  Fit = 6,
  Helmholtz = 7,
  Io = 8,
  Internal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), cls_(cls), name_(std::move(name)) {}
  ErrorClass error_class() const { return cls_; }
  int exit_code() const { return static_cast<int>(cls_); }
  const std::string& name() const { return name_; }

 private:
  ErrorClass cls_;
  std::string name_;
};

#define TRAPGAUSS_ERROR(NAME, CLASS)                            \
  class NAME : public Error {                                   \
   public:                                                      \
    explicit NAME(const std::string& what)                      \
        : Error(ErrorClass::CLASS, #NAME, what) {}              \
  };

TRAPGAUSS_ERROR(SignatureMismatch, Geometry)
TRAPGAUSS_ERROR(DegenerateSpan, Geometry)
TRAPGAUSS_ERROR(NotSpacelike, Geometry)
TRAPGAUSS_ERROR(OffShell, Geometry)
TRAPGAUSS_ERROR(NotLightlikeMeanCurvature, Geometry)

TRAPGAUSS_ERROR(DivisionNearZero, Evaluation)
TRAPGAUSS_ERROR(DomainError, Evaluation)
TRAPGAUSS_ERROR(DegreeExhausted, Evaluation)

TRAPGAUSS_ERROR(SyntaxError, Expression)
TRAPGAUSS_ERROR(UnknownIdentifier, Expression)

TRAPGAUSS_ERROR(RankDeficient, Fit)
TRAPGAUSS_ERROR(AllHarmonic, Fit)
TRAPGAUSS_ERROR(DegenerateBasis, Fit)
TRAPGAUSS_ERROR(HypothesisViolated, Fit)

TRAPGAUSS_ERROR(EmptyInterior, Helmholtz)
TRAPGAUSS_ERROR(NoConvergence, Helmholtz)

TRAPGAUSS_ERROR(DegenerateProjection, Io)
TRAPGAUSS_ERROR(IoError, Io)

TRAPGAUSS_ERROR(ConfigError, Usage)

#undef TRAPGAUSS_ERROR

}  // namespace trapgauss
