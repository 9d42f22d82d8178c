#pragma once
#include <functional>
#include <vector>

#include "trapgauss/algebra.hpp"
#include "trapgauss/jet.hpp"

namespace trapgauss {

// Lorentzian space form R^4_1(delta) inside its flat ambient:
// delta=0 -> E^4_1 itself, delta=+1 -> S^4_1(1) in E^5_1, delta=-1 -> H^4_1(-1) in E^5_2.
struct SpaceForm {
  int delta = 0;
  Signature ambient = Signature::minkowski4();

  static SpaceForm minkowski() { return {0, Signature::minkowski4()}; }
  static SpaceForm de_sitter() { return {+1, Signature::e51()}; }
  static SpaceForm anti_de_sitter() { return {-1, Signature::e52()}; }

  bool operator==(const SpaceForm&) const = default;
  const char* name() const {
    return delta == 0 ? "minkowski" : (delta > 0 ? "desitter" : "antidesitter");
  }
};

SpaceForm spaceform_by_name(const std::string& name);

// Parameter rectangle with an optional mask cutting it down (e.g. a strip).
struct Domain {
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
  std::function<bool(double, double)> mask;  // null means the whole rectangle

  bool contains(double u, double v) const {
    if (u < u0 || u > u1 || v < v0 || v > v1) return false;
    return !mask || mask(u, v);
  }
};

// Surface patch given by per-coordinate jets of the position vector.
struct Immersion {
  std::function<std::vector<Jet>(double u, double v, int degree)> eval;
  Domain domain;
};

}  // namespace trapgauss
