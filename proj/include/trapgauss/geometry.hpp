#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "trapgauss/immersion.hpp"

namespace trapgauss {

struct GeoTolerances {
  double on_shell = 1e-8;  // |<x,x> - delta| bound for delta = +-1
  double causal = 1e-9;    // relative light-like band and frame degeneracy
};

// Full per-point geometric state of a space-like surface patch.
struct PointGeometry {
  double u = 0, v = 0;
  SpaceForm sf;

  double g[2][2] = {};           // first fundamental form, coordinate basis
  AmbientVector e1, e2;          // orthonormal tangent frame, e1 parallel to x_u
  AmbientVector e3, e4;          // normal frame, <e3,e3>=+1, <e4,e4>=-1
  double h3[2][2] = {};          // h(e_i,e_j) = h3_ij e3 + h4_ij e4
  double h4[2][2] = {};
  AmbientVector H;               // mean curvature vector in R^4_1(delta)
  CausalClass Hclass = CausalClass::Zero;
  double A3[2][2] = {};          // shape operators in the tangent frame
  double A4[2][2] = {};
  double K = 0;                  // Gauss-equation value
  double K_intrinsic = 0;        // metric-only (Brioschi) value
  double KD = 0;                 // normal curvature <[A3,A4]e1,e2>
  AmbientVector DH1, DH2;        // normal connection applied to H along e1, e2
  double hhat_norm_sq = 0;       // squared norm of the ambient second fundamental form
  Bivector nu;                   // Gauss map e1 ^ e2
  Bivector laplacian_nu_direct;
  // absent when H is neither light-like nor zero (the curvature formula needs it)
  std::optional<Bivector> laplacian_nu_structural;
};

// Frames, fundamental forms, curvatures and both Laplacian routes at (u,v).
// Throws NotSpacelike when x_u, x_v fail to span a space-like plane and
// OffShell when the position constraint of a curved space form is violated.
PointGeometry point_geometry(const Immersion& imm, double u, double v, const SpaceForm& sf,
                             const GeoTolerances& tol = {});

// Metric Laplacian of the Plucker coordinates of nu = (x_u ^ x_v)/sqrt(det g),
// everything through jet arithmetic. Positive sign convention.
Bivector laplacian_gauss_direct(const Immersion& imm, double u, double v, const SpaceForm& sf,
                                const GeoTolerances& tol = {});

// (4 delta - 2K) nu - 2 K^D e3^e4 - 2 D_{e1}H ^ e2 - 2 e1 ^ D_{e2}H.
// Requires H light-like or zero at the point.
Bivector laplacian_gauss_structural(const PointGeometry& pg);

enum class TrappedKind { MarginallyTrapped, PartlyMarginallyTrapped, NotMarginallyTrapped };
const char* to_string(TrappedKind k);

struct TrappedVerdict {
  TrappedKind kind;
  std::vector<std::pair<double, double>> zero_locus;  // samples where H vanishes
  int lightlike_count = 0;
  int zero_count = 0;
  int other_count = 0;
};

// Light-like H everywhere -> marginally trapped; light-like with isolated
// zeros -> partly. H identically zero is maximal, not trapped.
TrappedKind trapped_kind_from_counts(int lightlike, int zero, int other);

TrappedVerdict marginally_trapped_test(const Immersion& imm,
                                       const std::vector<std::pair<double, double>>& grid,
                                       const SpaceForm& sf, const GeoTolerances& tol = {});

// Euclidean norm of Delta x - (-2H + 2 delta x), the Laplace-Beltrami identity.
double beltrami_check(const Immersion& imm, double u, double v, const SpaceForm& sf,
                      const GeoTolerances& tol = {});

// A_H == 0 test (<A_H X, Y> = <h(X,Y), H>).
bool pseudo_umbilical_test(const PointGeometry& pg, double tol = 1e-8);

struct MembershipResult {
  AmbientVector center;
  double radius_sq = 0;   // <x-c, x-c> = radius_sq; >0 pseudo-sphere, <0 pseudo-hyperbolic
  double residual = 0;    // RMS of <x-c,x-c> - radius_sq over the grid
};

// Least-squares fit over the sample grid; certifies that a delta=0 surface
// lies in a pseudo-sphere or pseudo-hyperbolic hyperquadric.
MembershipResult membership_check(const Immersion& imm,
                                  const std::vector<std::pair<double, double>>& grid,
                                  const Signature& sig);

}  // namespace trapgauss
