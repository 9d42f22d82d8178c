#pragma once
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "trapgauss/errors.hpp"

namespace trapgauss {

// Pseudo-Euclidean signature (m, s): coordinates 0..s-1 carry metric weight -1
// (time-like axes first), the remaining m-s carry +1.
struct Signature {
  int dim = 0;
  int index = 0;

  double weight(int i) const { return i < index ? -1.0 : 1.0; }
  int pair_count() const { return dim * (dim - 1) / 2; }

  // lexicographic slot of the axis pair (i, j), i < j
  int pair_slot(int i, int j) const { return i * dim - i * (i + 1) / 2 + (j - i - 1); }

  bool operator==(const Signature&) const = default;
  std::string str() const { return "E(" + std::to_string(dim) + "," + std::to_string(index) + ")"; }

  static Signature minkowski4() { return {4, 1}; }   // E^4_1
  static Signature e51() { return {5, 1}; }          // E^5_1
  static Signature e52() { return {5, 2}; }          // E^5_2
};

struct AmbientVector {
  Signature sig;
  std::vector<double> c;

  AmbientVector() = default;
  AmbientVector(Signature s, std::vector<double> coords) : sig(s), c(std::move(coords)) {}
  static AmbientVector zero(Signature s) { return {s, std::vector<double>(s.dim, 0.0)}; }
  static AmbientVector axis(Signature s, int i) {
    AmbientVector v = zero(s);
    v.c[i] = 1.0;
    return v;
  }

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
  int dim() const { return sig.dim; }

  double euclidean_norm_sq() const {
    double s = 0;
    for (double x : c) s += x * x;
    return s;
  }
  double euclidean_norm() const { return std::sqrt(euclidean_norm_sq()); }

  AmbientVector& operator+=(const AmbientVector& o);
  AmbientVector& operator-=(const AmbientVector& o);
  AmbientVector& operator*=(double a);
};

AmbientVector operator+(AmbientVector a, const AmbientVector& b);
AmbientVector operator-(AmbientVector a, const AmbientVector& b);
AmbientVector operator*(double a, AmbientVector v);
AmbientVector operator-(AmbientVector v);

// Element of Lambda^2(E^m_s) in Plucker coordinates, slots lexicographic on
// axis pairs (i, j), i < j.
struct Bivector {
  Signature sig;
  std::vector<double> p;

  Bivector() = default;
  explicit Bivector(Signature s) : sig(s), p(s.pair_count(), 0.0) {}
  Bivector(Signature s, std::vector<double> plucker) : sig(s), p(std::move(plucker)) {}

  double& slot(int i, int j) { return p[sig.pair_slot(i, j)]; }
  double slot(int i, int j) const { return p[sig.pair_slot(i, j)]; }

  double euclidean_norm_sq() const {
    double s = 0;
    for (double x : p) s += x * x;
    return s;
  }
  double euclidean_norm() const { return std::sqrt(euclidean_norm_sq()); }

  Bivector& operator+=(const Bivector& o);
  Bivector& operator-=(const Bivector& o);
  Bivector& operator*=(double a);
};

Bivector operator+(Bivector a, const Bivector& b);
Bivector operator-(Bivector a, const Bivector& b);
Bivector operator*(double a, Bivector b);
Bivector operator-(Bivector b);

enum class CausalClass { Spacelike, Timelike, Lightlike, Zero };
const char* to_string(CausalClass c);

inline constexpr double kCausalTolDefault = 1e-9;

// indefinite inner product <u,v> = -sum_{i<s} u_i v_i + sum_{i>=s} u_i v_i
double inner(const AmbientVector& u, const AmbientVector& v);

Bivector wedge(const AmbientVector& u, const AmbientVector& v);

// Induced inner product on Lambda^2: weight of slot (i,j) is w(i)*w(j).
// Agrees with det(<X_i,Y_j>) on decomposables.
double bivector_inner(const Bivector& a, const Bivector& b);

// Zero when the Euclidean norm is <= tol; Lightlike when |<u,u>| <= tol * |u|_E^2.
CausalClass causal_class(const AmbientVector& u, double tol = kCausalTolDefault);

struct OrthonormalFrame {
  std::vector<AmbientVector> frame;
  std::vector<int> signs;  // <f_i,f_i> = signs[i], each +1 or -1
};

// Gram-Schmidt under the indefinite metric, processing vectors in the given
// order (no pivoting). Throws DegenerateSpan when an intermediate residual is
// Euclidean-tiny (dependent input) or has |<w,w>| <= tol * |w|_E^2 (light-like
// direction).
OrthonormalFrame orthonormalize(const std::vector<AmbientVector>& vs, double tol = kCausalTolDefault);

}  // namespace trapgauss
