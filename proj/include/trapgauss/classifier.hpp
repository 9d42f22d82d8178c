#pragma once
#include <vector>

#include "trapgauss/geometry.hpp"

namespace trapgauss {

struct GaussSample {
  double u = 0, v = 0;
  Bivector nu;
  Bivector dnu;
};

struct ClassifyOptions {
  double tol_resid = 1e-6;  // relative residual gate for accepting a fit
  double tol_const = 1e-6;  // f_spread <= tol_const * (1 + |f_mean|) means global
  double tol_zero = 1e-8;   // dnu counts as zero when |dnu| <= tol_zero * (1 + |nu|)
};

struct OneTypeFit {
  Bivector C;
  std::vector<double> f;      // per input sample; NaN where dnu is zero (omitted)
  double f_mean = 0;
  double f_spread = 0;        // max - min over the used samples
  double residual_abs = 0;    // RMS of dnu - f (nu + C), Euclidean per sample
  double residual = 0;        // residual_abs / (1 + RMS |dnu|)
  int used = 0;
  int null_space_dim = 0;     // dimension of the unidentifiable C directions
};

enum class TaxonomyTag {
  Harmonic,
  GlobalFirstKind,
  ProperPointwiseFirstKind,
  GlobalSecondKind,
  ProperPointwiseSecondKind,
  NotPointwiseOneType,
};
const char* to_string(TaxonomyTag t);

struct Taxonomy {
  TaxonomyTag tag = TaxonomyTag::Harmonic;
  double lambda = 0;  // set for the global kinds
  Bivector C;         // set for the second kinds
  OneTypeFit first_kind;
  OneTypeFit second_kind;
  bool has_first = false, has_second = false;
};

// Least-squares constant C with f eliminated (Delta nu parallel to nu + C),
// then per-sample f and the misfit. All norms Euclidean on Plucker
// coordinates; when the system leaves C directions free the minimum-norm
// representative is returned and null_space_dim records how many. Throws
// AllHarmonic when no sample is usable, RankDeficient below 3 samples.
OneTypeFit fit_C(const std::vector<GaussSample>& samples, const ClassifyOptions& opt = {});

// Same with C forced to zero.
OneTypeFit fit_first_kind(const std::vector<GaussSample>& samples, const ClassifyOptions& opt = {});

// Case analysis: Harmonic, first/second kind, global/proper, or not 1-type.
// First kind wins ties (the more specific model).
Taxonomy classify(const std::vector<GaussSample>& samples, const ClassifyOptions& opt = {});

struct SecondKindStructure {
  double C12 = 0, C34 = 0, C1 = 0, C2 = 0;
  double residual = 0;  // Euclidean norm left outside span{e1^e2, e3^e4, e1^H, e2^H}
};

// Decomposes a constant vector in the light-like-H bivector basis at a point.
SecondKindStructure second_kind_structure(const OneTypeFit& fit, const PointGeometry& pg);

}  // namespace trapgauss
