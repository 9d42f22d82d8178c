#include "trapgauss/classifier.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace trapgauss {

const char* to_string(TaxonomyTag t) {
  switch (t) {
    case TaxonomyTag::Harmonic: return "Harmonic";
    case TaxonomyTag::GlobalFirstKind: return "GlobalFirstKind";
    case TaxonomyTag::ProperPointwiseFirstKind: return "ProperPointwiseFirstKind";
    case TaxonomyTag::GlobalSecondKind: return "GlobalSecondKind";
    case TaxonomyTag::ProperPointwiseSecondKind: return "ProperPointwiseSecondKind";
    case TaxonomyTag::NotPointwiseOneType: return "NotPointwiseOneType";
  }
  return "?";
}

namespace {

bool dnu_is_zero(const GaussSample& s, const ClassifyOptions& opt) {
  return s.dnu.euclidean_norm() <= opt.tol_zero * (1.0 + s.nu.euclidean_norm());
}

std::vector<int> usable_samples(const std::vector<GaussSample>& samples,
                                const ClassifyOptions& opt) {
  std::vector<int> used;
  for (size_t i = 0; i < samples.size(); ++i)
    if (!dnu_is_zero(samples[i], opt)) used.push_back(static_cast<int>(i));
  if (used.empty()) throw AllHarmonic("every sample has vanishing Delta nu");
  if (used.size() < 3)
    throw RankDeficient("only " + std::to_string(used.size()) + " samples with Delta nu != 0");
  return used;
}

// Shared tail: given C, fill per-sample f and the residuals.
void finish_fit(const std::vector<GaussSample>& samples, const std::vector<int>& used,
                OneTypeFit& fit) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  fit.f.assign(samples.size(), nan);
  fit.used = static_cast<int>(used.size());
  double mis_sq = 0, dnu_sq = 0;
  double fmin = 0, fmax = 0, fsum = 0;
  bool first = true;
  for (int i : used) {
    const GaussSample& s = samples[i];
    Bivector target = s.nu + fit.C;
    double denom = target.euclidean_norm_sq();
    double f = 0;
    if (denom > 0) {
      double num = 0;
      for (size_t c = 0; c < target.p.size(); ++c) num += s.dnu.p[c] * target.p[c];
      f = num / denom;
    }
    fit.f[i] = f;
    Bivector mis = s.dnu - f * target;
    mis_sq += mis.euclidean_norm_sq();
    dnu_sq += s.dnu.euclidean_norm_sq();
    fsum += f;
    if (first || f < fmin) fmin = f;
    if (first || f > fmax) fmax = f;
    first = false;
  }
  fit.f_mean = fsum / used.size();
  fit.f_spread = fmax - fmin;
  fit.residual_abs = std::sqrt(mis_sq / used.size());
  fit.residual = fit.residual_abs / (1.0 + std::sqrt(dnu_sq / used.size()));
}

}  // namespace

OneTypeFit fit_C(const std::vector<GaussSample>& samples, const ClassifyOptions& opt) {
  std::vector<int> used = usable_samples(samples, opt);
  const Signature sig = samples[used[0]].nu.sig;
  const int N = sig.pair_count();
  const int pairs = N * (N - 1) / 2;

  // dnu_i C_j - dnu_j C_i = nu_i dnu_j - nu_j dnu_i, rows scaled per sample
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<int>(used.size()) * pairs, N);
  Eigen::VectorXd b(static_cast<int>(used.size()) * pairs);
  int row = 0;
  for (int p : used) {
    const Bivector& nu = samples[p].nu;
    const Bivector& dnu = samples[p].dnu;
    double scale = 1.0 / std::max(1.0, dnu.euclidean_norm());
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j, ++row) {
        A(row, j) = scale * dnu.p[i];
        A(row, i) = -scale * dnu.p[j];
        b(row) = scale * (nu.p[i] * dnu.p[j] - nu.p[j] * dnu.p[i]);
      }
  }
  // Minimum-norm least squares. The system can be honestly rank-deficient:
  // when every Delta nu points along one fixed bivector direction (phi a
  // function of u+v alone, as in the exp strip example), C is determined only
  // up to that direction and the minimum-norm representative is reported.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(1e-10);
  cod.compute(A);
  Eigen::VectorXd sol = cod.solve(b);

  OneTypeFit fit;
  fit.null_space_dim = N - static_cast<int>(cod.rank());
  fit.C = Bivector(sig);
  for (int i = 0; i < N; ++i) fit.C.p[i] = sol(i);
  finish_fit(samples, used, fit);
  return fit;
}

OneTypeFit fit_first_kind(const std::vector<GaussSample>& samples, const ClassifyOptions& opt) {
  std::vector<int> used;
  for (size_t i = 0; i < samples.size(); ++i)
    if (!dnu_is_zero(samples[i], opt)) used.push_back(static_cast<int>(i));
  if (used.empty()) throw AllHarmonic("every sample has vanishing Delta nu");
  OneTypeFit fit;
  fit.C = Bivector(samples[used[0]].nu.sig);
  finish_fit(samples, used, fit);
  return fit;
}

Taxonomy classify(const std::vector<GaussSample>& samples, const ClassifyOptions& opt) {
  if (samples.size() < 3) throw RankDeficient("classify needs at least 3 samples");
  Taxonomy tax;
  bool all_zero = true;
  for (const auto& s : samples) all_zero = all_zero && dnu_is_zero(s, opt);
  if (all_zero) {
    tax.tag = TaxonomyTag::Harmonic;
    return tax;
  }

  tax.first_kind = fit_first_kind(samples, opt);
  tax.has_first = true;
  tax.second_kind = fit_C(samples, opt);
  tax.has_second = true;

  auto global = [&](const OneTypeFit& fit) {
    return fit.f_spread <= opt.tol_const * (1.0 + std::abs(fit.f_mean));
  };

  if (tax.first_kind.residual <= opt.tol_resid) {
    tax.tag = global(tax.first_kind) ? TaxonomyTag::GlobalFirstKind
                                     : TaxonomyTag::ProperPointwiseFirstKind;
    tax.lambda = tax.first_kind.f_mean;
    return tax;
  }
  if (tax.has_second && tax.second_kind.residual <= opt.tol_resid) {
    tax.tag = global(tax.second_kind) ? TaxonomyTag::GlobalSecondKind
                                      : TaxonomyTag::ProperPointwiseSecondKind;
    tax.lambda = tax.second_kind.f_mean;
    tax.C = tax.second_kind.C;
    return tax;
  }
  tax.tag = TaxonomyTag::NotPointwiseOneType;
  return tax;
}

SecondKindStructure second_kind_structure(const OneTypeFit& fit, const PointGeometry& pg) {
  if (causal_class(pg.H) == CausalClass::Zero)
    throw DegenerateBasis("H vanishes, e_i ^ H directions collapse");
  Bivector basis[4] = {wedge(pg.e1, pg.e2), wedge(pg.e3, pg.e4), wedge(pg.e1, pg.H),
                       wedge(pg.e2, pg.H)};
  const int N = fit.C.sig.pair_count();
  Eigen::MatrixXd A(N, 4);
  Eigen::VectorXd b(N);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < 4; ++c) A(r, c) = basis[c].p[r];
    b(r) = fit.C.p[r];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  qr.setThreshold(1e-10);
  qr.compute(A);
  if (qr.rank() < 4) throw DegenerateBasis("bivector basis is linearly dependent");
  Eigen::VectorXd sol = qr.solve(b);
  SecondKindStructure out;
  out.C12 = sol(0);
  out.C34 = sol(1);
  out.C1 = sol(2);
  out.C2 = sol(3);
  out.residual = (A * sol - b).norm();
  return out;
}

}  // namespace trapgauss
