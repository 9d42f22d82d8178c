#include "trapgauss/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace trapgauss {

SpaceForm spaceform_by_name(const std::string& name) {
  if (name == "minkowski") return SpaceForm::minkowski();
  if (name == "desitter") return SpaceForm::de_sitter();
  if (name == "antidesitter") return SpaceForm::anti_de_sitter();
  throw ConfigError("unknown spaceform '" + name + "'");
}

const char* to_string(TrappedKind k) {
  switch (k) {
    case TrappedKind::MarginallyTrapped: return "MarginallyTrapped";
    case TrappedKind::PartlyMarginallyTrapped: return "PartlyMarginallyTrapped";
    case TrappedKind::NotMarginallyTrapped: return "NotMarginallyTrapped";
  }
  return "?";
}

namespace {

using JetVec = std::vector<Jet>;

// Frame-degeneracy guard, distinct from the causal classification band: a
// tangent can be numerically healthy (g11 = 1 exactly) while its Euclidean
// norm is huge, so the rejection threshold sits at rounding scale.
constexpr double kDegenerateTol = 1e-13;

JetVec jv_partial(const JetVec& x, Var dir) {
  JetVec r;
  r.reserve(x.size());
  for (const auto& j : x) r.push_back(jet_partial(j, dir));
  return r;
}

JetVec jv_truncated(const JetVec& x, int deg) {
  JetVec r;
  r.reserve(x.size());
  for (const auto& j : x) r.push_back(j.truncated(deg));
  return r;
}

Jet jv_inner(const JetVec& a, const JetVec& b, const Signature& sig) {
  Jet s = Jet::constant(0.0, a[0].degree(), a[0].base_u(), a[0].base_v());
  for (int i = 0; i < sig.dim; ++i) s += sig.weight(i) * (a[i] * b[i]);
  return s;
}

JetVec jv_minus_scaled(JetVec y, const Jet& a, const JetVec& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] -= a * x[i];
  return y;
}

JetVec jv_scale(JetVec x, const Jet& a) {
  for (auto& j : x) j = j * a;
  return x;
}

AmbientVector jv_value(const JetVec& x, const Signature& sig) {
  AmbientVector v = AmbientVector::zero(sig);
  for (int i = 0; i < sig.dim; ++i) v[i] = x[i].value();
  return v;
}

AmbientVector jv_deriv(const JetVec& x, int a, int b, const Signature& sig) {
  AmbientVector v = AmbientVector::zero(sig);
  for (int i = 0; i < sig.dim; ++i) v[i] = x[i].deriv(a, b);
  return v;
}

double euclid_value_sq(const JetVec& x) {
  double s = 0;
  for (const auto& j : x) s += j.value() * j.value();
  return s;
}

// Shared metric context for a point evaluation.
struct MetricJets {
  JetVec x, xu, xv;
  Jet g11, g12, g22, det, sqrt_det, inv11, inv12, inv22;
};

MetricJets metric_jets(const Immersion& imm, double u, double v, const SpaceForm& sf,
                       const GeoTolerances& tol, int degree) {
  MetricJets m;
  m.x = imm.eval(u, v, degree);
  if (static_cast<int>(m.x.size()) != sf.ambient.dim)
    throw DomainError("immersion returned " + std::to_string(m.x.size()) + " coordinates in " +
                      sf.ambient.str());
  if (sf.delta != 0) {
    double shell = jv_inner(m.x, m.x, sf.ambient).value();
    if (std::abs(shell - sf.delta) > tol.on_shell)
      throw OffShell("<x,x> = " + std::to_string(shell) + " at (" + std::to_string(u) + ", " +
                     std::to_string(v) + "), expected " + std::to_string(sf.delta));
  }
  m.xu = jv_partial(m.x, Var::U);
  m.xv = jv_partial(m.x, Var::V);
  m.g11 = jv_inner(m.xu, m.xu, sf.ambient);
  m.g12 = jv_inner(m.xu, m.xv, sf.ambient);
  m.g22 = jv_inner(m.xv, m.xv, sf.ambient);
  m.det = m.g11 * m.g22 - m.g12 * m.g12;

  // Gram-Schmidt style degeneracy tests, each residual against its own
  // Euclidean scale: first x_u, then w2 = x_v - (g12/g11) x_u with
  // <w2,w2> = det/g11.
  bool bad = m.g11.value() <= kDegenerateTol * euclid_value_sq(m.xu);
  if (!bad) {
    double w2_sq = 0;
    double c = m.g12.value() / m.g11.value();
    for (int i = 0; i < sf.ambient.dim; ++i) {
      double w = m.xv[i].value() - c * m.xu[i].value();
      w2_sq += w * w;
    }
    bad = m.det.value() / m.g11.value() <= kDegenerateTol * w2_sq;
  }
  if (bad)
    throw NotSpacelike("tangent plane at (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") is not space-like: g11 = " + std::to_string(m.g11.value()) +
                       ", det g = " + std::to_string(m.det.value()));
  m.sqrt_det = sqrt(m.det);
  m.inv11 = m.g22 / m.det;
  m.inv12 = -1.0 * m.g12 / m.det;
  m.inv22 = m.g11 / m.det;
  return m;
}

// Value of the positive Laplace-Beltrami operator applied to the jet field f.
double laplace_value(const Jet& f, const MetricJets& m) {
  int d = f.degree() - 1;
  Jet fu = jet_partial(f, Var::U);
  Jet fv = jet_partial(f, Var::V);
  Jet sg = m.sqrt_det.truncated(d);
  Jet i11 = m.inv11.truncated(d), i12 = m.inv12.truncated(d), i22 = m.inv22.truncated(d);
  Jet flux_u = sg * (i11 * fu + i12 * fv);
  Jet flux_v = sg * (i12 * fu + i22 * fv);
  return -(jet_partial(flux_u, Var::U).value() + jet_partial(flux_v, Var::V).value()) /
         m.sqrt_det.value();
}

Bivector laplacian_direct_from(const MetricJets& m, const Signature& sig) {
  Bivector out(sig);
  for (int i = 0; i < sig.dim; ++i)
    for (int j = i + 1; j < sig.dim; ++j) {
      Jet slot = (m.xu[i] * m.xv[j] - m.xu[j] * m.xv[i]) / m.sqrt_det;
      out.slot(i, j) = laplace_value(slot, m);
    }
  return out;
}

}  // namespace

PointGeometry point_geometry(const Immersion& imm, double u, double v, const SpaceForm& sf,
                             const GeoTolerances& tol) {
  const Signature sig = sf.ambient;
  MetricJets m = metric_jets(imm, u, v, sf, tol, 3);

  PointGeometry pg;
  pg.u = u;
  pg.v = v;
  pg.sf = sf;
  pg.g[0][0] = m.g11.value();
  pg.g[0][1] = pg.g[1][0] = m.g12.value();
  pg.g[1][1] = m.g22.value();

  // tangent frame as degree-1 jet fields, e1 parallel to x_u
  JetVec xu1 = jv_truncated(m.xu, 1), xv1 = jv_truncated(m.xv, 1);
  Jet g11_1 = m.g11.truncated(1), g12_1 = m.g12.truncated(1);
  Jet n2sq = (m.det / m.g11).truncated(1);  // <w2,w2> for w2 = x_v - (g12/g11) x_u
  JetVec e1j = jv_scale(xu1, 1.0 / sqrt(g11_1));
  JetVec w2 = jv_minus_scaled(xv1, g12_1 / g11_1, xu1);
  JetVec e2j = jv_scale(w2, 1.0 / sqrt(n2sq));
  pg.e1 = jv_value(e1j, sig);
  pg.e2 = jv_value(e2j, sig);

  // frame coefficients e_i = P[i][0] d_u + P[i][1] d_v
  double P[2][2] = {{1.0 / std::sqrt(pg.g[0][0]), 0.0},
                    {-(pg.g[0][1] / pg.g[0][0]) / std::sqrt(n2sq.value()),
                     1.0 / std::sqrt(n2sq.value())}};

  // normal frame by projecting coordinate axes, skipping degenerate residuals
  AmbientVector xval = jv_value(m.x, sig);
  std::vector<std::pair<AmbientVector, int>> unit_frames = {{pg.e1, 1}, {pg.e2, 1}};
  if (sf.delta != 0) unit_frames.push_back({xval, sf.delta});
  std::vector<std::pair<AmbientVector, int>> normals;
  for (int k = 0; k < sig.dim && normals.size() < 2; ++k) {
    AmbientVector w = AmbientVector::axis(sig, k);
    for (const auto& [f, eps] : unit_frames) w -= (eps * inner(w, f)) * f;
    for (const auto& [f, eps] : normals) w -= (eps * inner(w, f)) * f;
    double e2n = w.euclidean_norm_sq();
    double q = inner(w, w);
    if (e2n <= kDegenerateTol || std::abs(q) <= kDegenerateTol * e2n) continue;  // next axis
    normals.push_back({(1.0 / std::sqrt(std::abs(q))) * w, q > 0 ? 1 : -1});
  }
  if (normals.size() < 2 || normals[0].second == normals[1].second)
    throw DegenerateSpan("could not build a (+,-) normal frame at (" + std::to_string(u) + ", " +
                         std::to_string(v) + ")");
  if (normals[0].second < 0) std::swap(normals[0], normals[1]);
  pg.e3 = normals[0].first;
  pg.e4 = normals[1].first;

  // second fundamental form: coordinate second derivatives projected on (e3,e4)
  AmbientVector xdd[2][2] = {{jv_deriv(m.x, 2, 0, sig), jv_deriv(m.x, 1, 1, sig)},
                             {jv_deriv(m.x, 1, 1, sig), jv_deriv(m.x, 0, 2, sig)}};
  double hc3[2][2], hc4[2][2];
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      hc3[k][l] = inner(xdd[k][l], pg.e3);         // eps_3 = +1
      hc4[k][l] = -inner(xdd[k][l], pg.e4);        // eps_4 = -1
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s3 = 0, s4 = 0;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          s3 += P[i][k] * P[j][l] * hc3[k][l];
          s4 += P[i][k] * P[j][l] * hc4[k][l];
        }
      pg.h3[i][j] = s3;
      pg.h4[i][j] = s4;
    }

  // mean curvature field H = P_N( (1/2) g^{kl} x_kl ), kept as a jet field so
  // its covariant derivative along the frame is available
  {
    int d = 1;
    JetVec xuu = jv_partial(m.xu, Var::U), xuv = jv_partial(m.xu, Var::V),
           xvv = jv_partial(m.xv, Var::V);
    Jet i11 = m.inv11.truncated(d), i12 = m.inv12.truncated(d), i22 = m.inv22.truncated(d);
    JetVec T(sig.dim, Jet(d, u, v));
    for (int c = 0; c < sig.dim; ++c)
      T[c] = 0.5 * (i11 * xuu[c].truncated(d) + 2.0 * (i12 * xuv[c].truncated(d)) +
                    i22 * xvv[c].truncated(d));
    JetVec e1t = jv_truncated(e1j, d), e2t = jv_truncated(e2j, d);
    JetVec Hj = jv_minus_scaled(T, jv_inner(T, e1t, sig), e1t);
    Hj = jv_minus_scaled(Hj, jv_inner(Hj, e2t, sig), e2t);
    if (sf.delta != 0) {
      JetVec xt = jv_truncated(m.x, d);
      Hj = jv_minus_scaled(Hj, double(sf.delta) * jv_inner(Hj, xt, sig), xt);
    }
    pg.H = jv_value(Hj, sig);

    AmbientVector Hu = jv_deriv(Hj, 1, 0, sig), Hv = jv_deriv(Hj, 0, 1, sig);
    for (int i = 0; i < 2; ++i) {
      AmbientVector dH = P[i][0] * Hu + P[i][1] * Hv;
      dH -= inner(dH, pg.e1) * pg.e1;
      dH -= inner(dH, pg.e2) * pg.e2;
      if (sf.delta != 0) dH -= (sf.delta * inner(dH, xval)) * xval;
      (i == 0 ? pg.DH1 : pg.DH2) = dH;
    }
  }
  pg.Hclass = causal_class(pg.H, tol.causal);

  // shape operators and curvatures
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      pg.A3[i][j] = pg.h3[i][j];
      pg.A4[i][j] = -pg.h4[i][j];
    }
  pg.K = sf.delta + (pg.h3[0][0] * pg.h3[1][1] - pg.h3[0][1] * pg.h3[0][1]) -
         (pg.h4[0][0] * pg.h4[1][1] - pg.h4[0][1] * pg.h4[0][1]);
  {
    // commutator element <[A3,A4] e1, e2>
    double c10 = 0;
    for (int k = 0; k < 2; ++k)
      c10 += pg.A3[1][k] * pg.A4[k][0] - pg.A4[1][k] * pg.A3[k][0];
    pg.KD = c10;
  }

  // Brioschi formula from the metric jets alone
  {
    double E = m.g11.value(), F = m.g12.value(), G = m.g22.value();
    double Eu = m.g11.deriv(1, 0), Ev = m.g11.deriv(0, 1), Evv = m.g11.deriv(0, 2);
    double Fu = m.g12.deriv(1, 0), Fv = m.g12.deriv(0, 1), Fuv = m.g12.deriv(1, 1);
    double Gu = m.g22.deriv(1, 0), Gv = m.g22.deriv(0, 1), Guu = m.g22.deriv(2, 0);
    auto det3 = [](double a00, double a01, double a02, double a10, double a11, double a12,
                   double a20, double a21, double a22) {
      return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
             a02 * (a10 * a21 - a11 * a20);
    };
    double d1 = det3(-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
                     Fv - 0.5 * Gu, E, F,
                     0.5 * Gv, F, G);
    double d2 = det3(0, 0.5 * Ev, 0.5 * Gu,
                     0.5 * Ev, E, F,
                     0.5 * Gu, F, G);
    double W = E * G - F * F;
    pg.K_intrinsic = (d1 - d2) / (W * W);
  }

  // ambient second fundamental form: hhat(e_i,e_j) = h(e_i,e_j) - delta <e_i,e_j> x
  {
    double s = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        AmbientVector hij = pg.h3[i][j] * pg.e3 + pg.h4[i][j] * pg.e4;
        if (sf.delta != 0 && i == j) hij -= double(sf.delta) * xval;
        s += inner(hij, hij);
      }
    pg.hhat_norm_sq = s;
  }

  pg.nu = wedge(pg.e1, pg.e2);
  pg.laplacian_nu_direct = laplacian_direct_from(m, sig);
  if (pg.Hclass == CausalClass::Lightlike || pg.Hclass == CausalClass::Zero)
    pg.laplacian_nu_structural = laplacian_gauss_structural(pg);
  return pg;
}

Bivector laplacian_gauss_direct(const Immersion& imm, double u, double v, const SpaceForm& sf,
                                const GeoTolerances& tol) {
  MetricJets m = metric_jets(imm, u, v, sf, tol, 3);
  return laplacian_direct_from(m, sf.ambient);
}

Bivector laplacian_gauss_structural(const PointGeometry& pg) {
  if (pg.Hclass == CausalClass::Spacelike || pg.Hclass == CausalClass::Timelike)
    throw NotLightlikeMeanCurvature("H is " + std::string(to_string(pg.Hclass)) + " at (" +
                                    std::to_string(pg.u) + ", " + std::to_string(pg.v) + ")");
  Bivector out = (4.0 * pg.sf.delta - 2.0 * pg.K) * pg.nu;
  out -= 2.0 * pg.KD * wedge(pg.e3, pg.e4);
  out -= 2.0 * wedge(pg.DH1, pg.e2);
  out -= 2.0 * wedge(pg.e1, pg.DH2);
  return out;
}

TrappedVerdict marginally_trapped_test(const Immersion& imm,
                                       const std::vector<std::pair<double, double>>& grid,
                                       const SpaceForm& sf, const GeoTolerances& tol) {
  if (grid.empty()) throw DomainError("marginally_trapped_test needs a non-empty grid");
  TrappedVerdict out{TrappedKind::NotMarginallyTrapped, {}, 0, 0, 0};
  for (auto [u, v] : grid) {
    PointGeometry pg = point_geometry(imm, u, v, sf, tol);
    switch (pg.Hclass) {
      case CausalClass::Lightlike: ++out.lightlike_count; break;
      case CausalClass::Zero:
        ++out.zero_count;
        out.zero_locus.push_back({u, v});
        break;
      default: ++out.other_count; break;
    }
  }
  out.kind = trapped_kind_from_counts(out.lightlike_count, out.zero_count, out.other_count);
  return out;
}

TrappedKind trapped_kind_from_counts(int lightlike, int zero, int other) {
  if (other == 0 && zero == 0 && lightlike > 0) return TrappedKind::MarginallyTrapped;
  if (other == 0 && zero > 0 && lightlike > 0) return TrappedKind::PartlyMarginallyTrapped;
  return TrappedKind::NotMarginallyTrapped;  // includes the maximal H == 0 case
}

double beltrami_check(const Immersion& imm, double u, double v, const SpaceForm& sf,
                      const GeoTolerances& tol) {
  MetricJets m = metric_jets(imm, u, v, sf, tol, 3);
  PointGeometry pg = point_geometry(imm, u, v, sf, tol);
  double s = 0;
  for (int c = 0; c < sf.ambient.dim; ++c) {
    double lap = laplace_value(m.x[c], m);
    double expect = -2.0 * pg.H[c] + 2.0 * sf.delta * m.x[c].value();
    s += (lap - expect) * (lap - expect);
  }
  return std::sqrt(s);
}

bool pseudo_umbilical_test(const PointGeometry& pg, double tol) {
  double c3 = inner(pg.e3, pg.H), c4 = inner(pg.e4, pg.H);
  // <h(e_i,e_j), H> cancels between products whose factors can be much larger
  // than the result when the normal plane is nearly null; gauge the entries
  // against the pre-cancellation magnitude.
  double hmax = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      AmbientVector hij = pg.h3[i][j] * pg.e3 + pg.h4[i][j] * pg.e4;
      hmax = std::max(hmax, hij.euclidean_norm());
    }
  double scale = (1.0 + pg.H.euclidean_norm()) * (1.0 + hmax);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(pg.h3[i][j] * c3 + pg.h4[i][j] * c4) > tol * scale) return false;
  return true;
}

MembershipResult membership_check(const Immersion& imm,
                                  const std::vector<std::pair<double, double>>& grid,
                                  const Signature& sig) {
  const int m = sig.dim;
  const int cols = m + 1;
  if (static_cast<int>(grid.size()) < cols + 1)
    throw RankDeficient("membership_check needs at least " + std::to_string(cols + 1) +
                        " grid points");
  Eigen::MatrixXd A(grid.size(), cols);
  Eigen::VectorXd b(grid.size());
  std::vector<AmbientVector> xs;
  xs.reserve(grid.size());
  for (size_t p = 0; p < grid.size(); ++p) {
    auto jets = imm.eval(grid[p].first, grid[p].second, 0);
    AmbientVector x = AmbientVector::zero(sig);
    for (int i = 0; i < m; ++i) x[i] = jets[i].value();
    xs.push_back(x);
    for (int i = 0; i < m; ++i) A(p, i) = 2.0 * sig.weight(i) * x[i];
    A(p, m) = 1.0;
    b(p) = inner(x, x);
  }
  // Degenerate samples (points that do not span a surface patch) cannot pin a
  // quadric down at all.
  {
    Eigen::MatrixXd X(grid.size(), m);
    for (size_t p = 0; p < grid.size(); ++p)
      for (int i = 0; i < m; ++i) X(p, i) = xs[p][i];
    Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> hull(centered);
    double smax = hull.singularValues()(0);
    int dim = 0;
    for (int i = 0; i < hull.singularValues().size(); ++i)
      if (hull.singularValues()(i) > 1e-10 * (1.0 + smax)) ++dim;
    if (dim < 2)
      throw RankDeficient("sample spans only a " + std::to_string(dim) +
                          "-dimensional affine set");
  }

  // Least squares; when the quadric family through the data is not unique, the
  // representative with the smallest center norm is reported.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  Eigen::VectorXd sol = svd.solve(b);
  int rank = svd.rank();
  if (rank < cols) {
    Eigen::MatrixXd null_c = svd.matrixV().rightCols(cols - rank).topRows(m);
    Eigen::VectorXd z =
        null_c.completeOrthogonalDecomposition().solve(-sol.head(m));
    sol += svd.matrixV().rightCols(cols - rank) * z;
  }
  MembershipResult out;
  out.center = AmbientVector::zero(sig);
  for (int i = 0; i < m; ++i) out.center[i] = sol(i);
  out.radius_sq = sol(m) + inner(out.center, out.center);
  double s = 0;
  for (const auto& x : xs) {
    AmbientVector d = x - out.center;
    double r = inner(d, d) - out.radius_sq;
    s += r * r;
  }
  out.residual = std::sqrt(s / grid.size());
  return out;
}

}  // namespace trapgauss
