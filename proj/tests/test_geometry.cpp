#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trapgauss/catalog.hpp"
#include "trapgauss/geometry.hpp"

using namespace trapgauss;

namespace {

std::mt19937 rng(123);
double rnd(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Immersion graph_of(PhiField phi, Domain dom = {0, 1, 0, 1, nullptr}) {
  return build_graph_immersion({std::move(phi), dom});
}

PhiField phi_zero() {
  return [](double u, double v, int d) { return Jet::constant(0.0, d, u, v); };
}
PhiField phi_usq() {
  return [](double u, double v, int d) {
    Jet x = Jet::var_u(u, v, d);
    return x * x;
  };
}
PhiField phi_generic() {
  return [](double u, double v, int d) {
    Jet ju = Jet::var_u(u, v, d), jv = Jet::var_v(u, v, d);
    return sin(ju) * cosh(jv) + 0.3 * (ju * (jv * jv));
  };
}

Immersion desitter_product() { return catalog_entry("desitter-product").make({}); }

// H^1(-a^2) x S^1(b^2): space-like product surface with time-like H for b > a
Immersion trapped_product(double a, double b) {
  Immersion imm;
  imm.domain = {-1, 1, 0, 6.28, nullptr};
  imm.eval = [a, b](double u, double v, int d) {
    Jet ju = Jet::var_u(u, v, d), jv = Jet::var_v(u, v, d);
    return std::vector<Jet>{a * cosh(ju), a * sinh(ju), b * cos(jv), b * sin(jv)};
  };
  return imm;
}

std::vector<std::pair<double, double>> grid_of(const Domain& dom, int n) {
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double u = dom.u0 + (dom.u1 - dom.u0) * i / (n - 1);
      double v = dom.v0 + (dom.v1 - dom.v0) * j / (n - 1);
      if (!dom.mask || dom.mask(u, v)) pts.push_back({u, v});
    }
  return pts;
}

}  // namespace

TEST_CASE("flat plane") {
  Immersion imm = graph_of(phi_zero());
  PointGeometry pg = point_geometry(imm, 0.3, 0.7, SpaceForm::minkowski());
  CHECK(pg.g[0][0] == doctest::Approx(1.0));
  CHECK(pg.g[0][1] == doctest::Approx(0.0));
  CHECK(pg.g[1][1] == doctest::Approx(1.0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(pg.h3[i][j] == doctest::Approx(0.0));
      CHECK(pg.h4[i][j] == doctest::Approx(0.0));
    }
  CHECK(pg.H.euclidean_norm() <= 1e-14);
  CHECK(pg.Hclass == CausalClass::Zero);
  CHECK(pg.K == doctest::Approx(0.0));
  CHECK(pg.laplacian_nu_direct.euclidean_norm() <= 1e-12);
}

TEST_CASE("graph of u^2") {
  Immersion imm = graph_of(phi_usq());
  SpaceForm sf = SpaceForm::minkowski();
  for (int t = 0; t < 5; ++t) {
    double u = rnd(0, 1), v = rnd(0, 1);
    PointGeometry pg = point_geometry(imm, u, v, sf);
    CHECK(pg.g[0][0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pg.g[0][1] == doctest::Approx(0.0));
    CHECK(pg.g[1][1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pg.K == doctest::Approx(0.0));
    CHECK(pg.KD == doctest::Approx(0.0));
    // H = -(Delta phi / 2)(1,0,0,1) = (1,0,0,1) since Delta phi = -2
    CHECK(pg.H[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pg.H[1] == doctest::Approx(0.0));
    CHECK(pg.H[2] == doctest::Approx(0.0));
    CHECK(pg.H[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pg.Hclass == CausalClass::Lightlike);
    CHECK(pg.laplacian_nu_direct.euclidean_norm() <= 1e-10);  // harmonic Gauss map
    REQUIRE(pg.laplacian_nu_structural.has_value());
    CHECK(pg.laplacian_nu_structural->euclidean_norm() <= 1e-10);
    CHECK(beltrami_check(imm, u, v, sf) <= 1e-9);
    CHECK(pseudo_umbilical_test(pg));
    CHECK(bivector_inner(pg.nu, pg.nu) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("generic graph surface invariants") {
  Immersion imm = graph_of(phi_generic());
  SpaceForm sf = SpaceForm::minkowski();
  for (int t = 0; t < 10; ++t) {
    double u = rnd(0, 1), v = rnd(0, 1);
    PointGeometry pg = point_geometry(imm, u, v, sf);
    CHECK(pg.K == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(pg.KD == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(std::abs(pg.K - pg.K_intrinsic) <= 1e-7);
    CHECK(pg.h3[0][1] == pg.h3[1][0]);
    CHECK(pg.h4[0][1] == pg.h4[1][0]);
    CHECK(pseudo_umbilical_test(pg));
    // route equivalence where the structural route applies
    REQUIRE(pg.laplacian_nu_structural.has_value());
    Bivector diff = pg.laplacian_nu_direct - *pg.laplacian_nu_structural;
    CHECK(diff.euclidean_norm() <= 1e-7 * (1 + pg.laplacian_nu_direct.euclidean_norm()));
    // || hhat ||^2 = 4 delta - 2K on marginally trapped points
    CHECK(pg.hhat_norm_sq == doctest::Approx(4.0 * sf.delta - 2 * pg.K).epsilon(1e-9));
    CHECK(beltrami_check(imm, u, v, sf) <= 1e-8);
  }
}

TEST_CASE("de Sitter product surface") {
  Immersion imm = desitter_product();
  SpaceForm sf = SpaceForm::de_sitter();
  for (int t = 0; t < 10; ++t) {
    double u = rnd(-1.1, 1.1), v = rnd(0.1, 6.1);
    PointGeometry pg = point_geometry(imm, u, v, sf);
    CHECK(pg.K == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pg.K - pg.K_intrinsic) <= 1e-7);
    CHECK(pg.KD == doctest::Approx(0.0));
    CHECK(pg.Hclass == CausalClass::Lightlike);
    CHECK(pg.DH1.euclidean_norm() <= 1e-9);
    CHECK(pg.DH2.euclidean_norm() <= 1e-9);
    CHECK(pseudo_umbilical_test(pg));
    // Delta nu = 2 nu
    Bivector expect = 2.0 * pg.nu;
    CHECK((pg.laplacian_nu_direct - expect).euclidean_norm() <=
          1e-9 * (1 + expect.euclidean_norm()));
    REQUIRE(pg.laplacian_nu_structural.has_value());
    CHECK((*pg.laplacian_nu_structural - expect).euclidean_norm() <= 1e-9);
    CHECK(pg.hhat_norm_sq == doctest::Approx(4.0 - 2 * pg.K).epsilon(1e-9));
    CHECK(beltrami_check(imm, u, v, sf) <= 1e-7);
  }
}

TEST_CASE("off-shell position is rejected") {
  Immersion imm = desitter_product();
  Immersion scaled;
  scaled.domain = imm.domain;
  scaled.eval = [imm](double u, double v, int d) {
    auto x = imm.eval(u, v, d);
    for (auto& j : x) j = 1.001 * j;
    return x;
  };
  CHECK_THROWS_AS(point_geometry(scaled, 0.2, 0.3, SpaceForm::de_sitter()), OffShell);
}

TEST_CASE("non-spacelike tangent planes are rejected") {
  Immersion timelike;
  timelike.domain = {0, 1, 0, 1, nullptr};
  timelike.eval = [](double u, double v, int d) {
    return std::vector<Jet>{Jet::var_u(u, v, d), Jet::var_v(u, v, d),
                            Jet::constant(0, d, u, v), Jet::constant(0, d, u, v)};
  };
  CHECK_THROWS_AS(point_geometry(timelike, 0.5, 0.5, SpaceForm::minkowski()), NotSpacelike);

  Immersion nullplane;  // x_u light-like
  nullplane.domain = {0, 1, 0, 1, nullptr};
  nullplane.eval = [](double u, double v, int d) {
    return std::vector<Jet>{Jet::var_u(u, v, d), Jet::var_u(u, v, d), Jet::var_v(u, v, d),
                            Jet::constant(0, d, u, v)};
  };
  CHECK_THROWS_AS(point_geometry(nullplane, 0.5, 0.5, SpaceForm::minkowski()), NotSpacelike);
}

TEST_CASE("trapped product surface has time-like H") {
  Immersion imm = trapped_product(1.0, 2.0);
  SpaceForm sf = SpaceForm::minkowski();
  PointGeometry pg = point_geometry(imm, 0.4, 1.0, sf);
  CHECK(pg.Hclass == CausalClass::Timelike);
  CHECK(!pseudo_umbilical_test(pg));
  CHECK(std::abs(pg.K - pg.K_intrinsic) <= 1e-7);
  CHECK(!pg.laplacian_nu_structural.has_value());
  CHECK_THROWS_AS(laplacian_gauss_structural(pg), NotLightlikeMeanCurvature);
}

TEST_CASE("marginally trapped verdicts") {
  SpaceForm sf = SpaceForm::minkowski();
  {
    Immersion imm = graph_of(phi_usq());
    auto verdict = marginally_trapped_test(imm, grid_of(imm.domain, 7), sf);
    CHECK(verdict.kind == TrappedKind::MarginallyTrapped);
    CHECK(verdict.zero_locus.empty());
  }
  {
    // eigenfunction graph sampled including the boundary, where H vanishes
    Immersion imm = catalog_entry("square-eigenfunction").make({});
    auto verdict = marginally_trapped_test(imm, grid_of(imm.domain, 7), sf);
    CHECK(verdict.kind == TrappedKind::PartlyMarginallyTrapped);
    CHECK(verdict.zero_count > 0);
    CHECK(verdict.lightlike_count > 0);
  }
  {
    Immersion imm = graph_of(phi_zero());  // maximal, not trapped
    auto verdict = marginally_trapped_test(imm, grid_of(imm.domain, 5), sf);
    CHECK(verdict.kind == TrappedKind::NotMarginallyTrapped);
  }
  {
    Immersion imm = trapped_product(1.0, 2.0);
    auto verdict = marginally_trapped_test(imm, grid_of(imm.domain, 5), sf);
    CHECK(verdict.kind == TrappedKind::NotMarginallyTrapped);
    CHECK(verdict.other_count > 0);
  }
}

TEST_CASE("normal frame gauge: boosts leave the structural pieces invariant") {
  Immersion imm = graph_of(phi_generic());
  PointGeometry pg = point_geometry(imm, 0.4, 0.6, SpaceForm::minkowski());

  for (double a : {0.3, -0.8}) {
    // boost (e3,e4) -> (cosh a e3 + sinh a e4, sinh a e3 + cosh a e4)
    double ch = std::cosh(a), sh = std::sinh(a);
    double h3p[2][2], h4p[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        h3p[i][j] = ch * pg.h3[i][j] - sh * pg.h4[i][j];
        h4p[i][j] = -sh * pg.h3[i][j] + ch * pg.h4[i][j];
      }
    // KD from the boosted shape operators A3' = h3', A4' = -h4'
    double c10 = 0;
    for (int k = 0; k < 2; ++k)
      c10 += h3p[1][k] * (-h4p[k][0]) - (-h4p[1][k]) * h3p[k][0];
    CHECK(c10 == doctest::Approx(pg.KD).epsilon(1e-9));
    // e3' ^ e4' equals e3 ^ e4
    AmbientVector e3p = ch * pg.e3 + sh * pg.e4;
    AmbientVector e4p = sh * pg.e3 + ch * pg.e4;
    CHECK((wedge(e3p, e4p) - wedge(pg.e3, pg.e4)).euclidean_norm() <= 1e-12);
    // Gauss-equation K from the boosted components
    double Kp = (h3p[0][0] * h3p[1][1] - h3p[0][1] * h3p[0][1]) -
                (h4p[0][0] * h4p[1][1] - h4p[0][1] * h4p[0][1]);
    CHECK(Kp == doctest::Approx(pg.K).epsilon(1e-9));
  }
  {
    // orientation reversal e4 -> -e4 flips KD (and e3^e4 with it)
    double c10 = 0;
    for (int k = 0; k < 2; ++k)
      c10 += pg.h3[1][k] * pg.h4[k][0] - pg.h4[1][k] * pg.h3[k][0];  // A4 -> +h4
    CHECK(c10 == doctest::Approx(-pg.KD).epsilon(1e-12));
  }
}

TEST_CASE("tangent gauge: rotating the parameters preserves the invariants") {
  // surface defined on arbitrary seed jets so a linear reparametrization is exact
  auto surface = [](const Jet& U, const Jet& V) {
    Jet phi = 0.4 * (sin(U) * cosh(V));
    return std::vector<Jet>{phi, U, V, phi};
  };
  double th = 0.37, c = std::cos(th), s = std::sin(th);
  Immersion orig, rot;
  orig.domain = rot.domain = {-2, 2, -2, 2, nullptr};
  orig.eval = [surface](double u, double v, int d) {
    return surface(Jet::var_u(u, v, d), Jet::var_v(u, v, d));
  };
  rot.eval = [surface, c, s](double u, double v, int d) {
    Jet U = c * Jet::var_u(u, v, d) - s * Jet::var_v(u, v, d);
    Jet V = s * Jet::var_u(u, v, d) + c * Jet::var_v(u, v, d);
    return surface(U, V);
  };
  SpaceForm sf = SpaceForm::minkowski();
  for (int t = 0; t < 5; ++t) {
    double u = rnd(-0.5, 0.5), v = rnd(-0.5, 0.5);
    PointGeometry a = point_geometry(rot, u, v, sf);
    PointGeometry b = point_geometry(orig, c * u - s * v, s * u + c * v, sf);
    CHECK(a.K == doctest::Approx(b.K).epsilon(1e-9));
    CHECK(inner(a.H, a.H) == doctest::Approx(inner(b.H, b.H)).epsilon(1e-9));
    CHECK(std::abs(a.KD) == doctest::Approx(std::abs(b.KD)).epsilon(1e-9));
    CHECK((a.laplacian_nu_direct - b.laplacian_nu_direct).euclidean_norm() <=
          1e-9 * (1 + b.laplacian_nu_direct.euclidean_norm()));
  }
}

TEST_CASE("membership fit") {
  // synthetic pseudo-sphere <x - c, x - c> = k
  AmbientVector center(Signature::minkowski4(), {0.3, -0.2, 0.5, 1.1});
  double radius = 1.5;
  Immersion sphere;
  sphere.domain = {-0.5, 0.5, 0, 1, nullptr};
  sphere.eval = [center, radius](double u, double v, int d) {
    // generic patch of S^3_1(r^2): r (sinh u, cosh u w(u,v)) with w a unit 2-sphere point
    Jet ju = Jet::var_u(u, v, d), jv = Jet::var_v(u, v, d);
    return std::vector<Jet>{radius * sinh(ju) + center[0],
                            radius * (cosh(ju) * cos(jv)) + center[1],
                            radius * (cosh(ju) * (sin(jv) * cos(ju))) + center[2],
                            radius * (cosh(ju) * (sin(jv) * sin(ju))) + center[3]};
  };
  auto grid = grid_of(sphere.domain, 6);
  MembershipResult mr = membership_check(sphere, grid, Signature::minkowski4());
  for (int i = 0; i < 4; ++i) CHECK(mr.center[i] == doctest::Approx(center[i]).epsilon(1e-8));
  CHECK(mr.radius_sq == doctest::Approx(radius * radius).epsilon(1e-8));
  CHECK(mr.residual <= 1e-10);

  // graph surfaces are rejected: residual bounded away from zero
  Immersion graph = graph_of(phi_usq());
  MembershipResult rej =
      membership_check(graph, grid_of(graph.domain, 8), Signature::minkowski4());
  CHECK(rej.residual > 1e-3);

  // a translated copy recovers the translation
  AmbientVector shift(Signature::minkowski4(), {-1, 2, 0.5, 0});
  Immersion moved;
  moved.domain = sphere.domain;
  moved.eval = [&sphere, shift](double u, double v, int d) {
    auto x = sphere.eval(u, v, d);
    for (int i = 0; i < 4; ++i) x[i] += shift[i];
    return x;
  };
  MembershipResult mv = membership_check(moved, grid, Signature::minkowski4());
  for (int i = 0; i < 4; ++i)
    CHECK(mv.center[i] == doctest::Approx(center[i] + shift[i]).epsilon(1e-8));

  // degenerate sample: every grid point identical
  std::vector<std::pair<double, double>> collapsed(8, {0.1, 0.2});
  CHECK_THROWS_AS(membership_check(sphere, collapsed, Signature::minkowski4()), RankDeficient);
}

TEST_CASE("de Sitter surface reinterpreted in flat E^5_1 lies on the unit quadric") {
  Immersion imm = desitter_product();
  auto grid = grid_of(imm.domain, 20);
  MembershipResult mr = membership_check(imm, grid, Signature::e51());
  for (int i = 0; i < 5; ++i) CHECK(mr.center[i] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(mr.radius_sq == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mr.residual <= 1e-10);
}
