#include "trapgauss/algebra.hpp"

namespace trapgauss {

namespace {
void require_same(const Signature& a, const Signature& b, const char* op) {
  if (!(a == b)) throw SignatureMismatch(std::string(op) + " over " + a.str() + " and " + b.str());
}
}  // namespace

AmbientVector& AmbientVector::operator+=(const AmbientVector& o) {
  require_same(sig, o.sig, "add");
  for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
  return *this;
}
AmbientVector& AmbientVector::operator-=(const AmbientVector& o) {
  require_same(sig, o.sig, "sub");
  for (int i = 0; i < dim(); ++i) c[i] -= o.c[i];
  return *this;
}
AmbientVector& AmbientVector::operator*=(double a) {
  for (double& x : c) x *= a;
  return *this;
}
AmbientVector operator+(AmbientVector a, const AmbientVector& b) { return a += b; }
AmbientVector operator-(AmbientVector a, const AmbientVector& b) { return a -= b; }
AmbientVector operator*(double a, AmbientVector v) { return v *= a; }
AmbientVector operator-(AmbientVector v) { return v *= -1.0; }

Bivector& Bivector::operator+=(const Bivector& o) {
  require_same(sig, o.sig, "add");
  for (size_t i = 0; i < p.size(); ++i) p[i] += o.p[i];
  return *this;
}
Bivector& Bivector::operator-=(const Bivector& o) {
  require_same(sig, o.sig, "sub");
  for (size_t i = 0; i < p.size(); ++i) p[i] -= o.p[i];
  return *this;
}
Bivector& Bivector::operator*=(double a) {
  for (double& x : p) x *= a;
  return *this;
}
Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
Bivector operator-(Bivector a, const Bivector& b) { return a -= b; }
Bivector operator*(double a, Bivector b) { return b *= a; }
Bivector operator-(Bivector b) { return b *= -1.0; }

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "Spacelike";
    case CausalClass::Timelike: return "Timelike";
    case CausalClass::Lightlike: return "Lightlike";
    case CausalClass::Zero: return "Zero";
  }
  return "?";
}

double inner(const AmbientVector& u, const AmbientVector& v) {
  require_same(u.sig, v.sig, "inner");
  double s = 0;
  for (int i = 0; i < u.dim(); ++i) s += u.sig.weight(i) * u.c[i] * v.c[i];
  return s;
}

Bivector wedge(const AmbientVector& u, const AmbientVector& v) {
  require_same(u.sig, v.sig, "wedge");
  Bivector b(u.sig);
  int m = u.dim();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) b.slot(i, j) = u.c[i] * v.c[j] - u.c[j] * v.c[i];
  return b;
}

double bivector_inner(const Bivector& a, const Bivector& b) {
  require_same(a.sig, b.sig, "bivector_inner");
  double s = 0;
  int m = a.sig.dim;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      s += a.sig.weight(i) * a.sig.weight(j) * a.slot(i, j) * b.slot(i, j);
  return s;
}

CausalClass causal_class(const AmbientVector& u, double tol) {
  double e2 = u.euclidean_norm_sq();
  if (std::sqrt(e2) <= tol) return CausalClass::Zero;
  double q = inner(u, u);
  if (std::abs(q) <= tol * e2) return CausalClass::Lightlike;
  return q > 0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

OrthonormalFrame orthonormalize(const std::vector<AmbientVector>& vs, double tol) {
  OrthonormalFrame out;
  for (const auto& v : vs) {
    AmbientVector w = v;
    for (size_t k = 0; k < out.frame.size(); ++k)
      w -= (out.signs[k] * inner(w, out.frame[k])) * out.frame[k];
    double e2 = w.euclidean_norm_sq();
    double q = inner(w, w);
    if (e2 <= tol * tol || std::abs(q) <= tol * e2)
      throw DegenerateSpan("vector " + std::to_string(out.frame.size()) +
                           " leaves a light-like or dependent residual");
    out.signs.push_back(q > 0 ? 1 : -1);
    out.frame.push_back((1.0 / std::sqrt(std::abs(q))) * w);
  }
  return out;
}

}  // namespace trapgauss
