#include "trapgauss/catalog.hpp"

#include <cmath>

#include "trapgauss/expr.hpp"

namespace trapgauss {

namespace {

AmbientVector e41(double a, double b, double c, double d) {
  return {Signature::minkowski4(), {a, b, c, d}};
}

double flat_laplacian(const Jet& phi) { return -(phi.deriv(2, 0) + phi.deriv(0, 2)); }

}  // namespace

Immersion build_graph_immersion(const GraphSurface& gs) {
  Immersion imm;
  imm.domain = gs.domain;
  PhiField phi = gs.phi;
  imm.eval = [phi](double u, double v, int degree) {
    Jet p = phi(u, v, degree);
    return std::vector<Jet>{p, Jet::var_u(u, v, degree), Jet::var_v(u, v, degree), p};
  };
  return imm;
}

GraphClosedForms graph_closed_forms(const PhiField& phi, double u, double v) {
  Jet p = phi(u, v, 3);
  double pu = p.deriv(1, 0), pv = p.deriv(0, 1);
  // Delta(phi_u), Delta(phi_v) with the positive Laplacian
  double lap_pu = -(p.deriv(3, 0) + p.deriv(1, 2));
  double lap_pv = -(p.deriv(2, 1) + p.deriv(0, 3));

  AmbientVector ell = e41(1, 0, 0, 1);
  AmbientVector e1 = e41(pu, 1, 0, pu);
  AmbientVector e2 = e41(pv, 0, 1, pv);

  GraphClosedForms out;
  out.H = (-0.5 * flat_laplacian(p)) * ell;
  out.nu = wedge(ell, -pv * e1 + pu * e2) + wedge(e41(0, 1, 0, 0), e41(0, 0, 1, 0));
  out.dnu = wedge(ell, -lap_pv * e1 + lap_pu * e2);
  return out;
}

Prop3Prediction prop3_predict(const std::function<Jet(const Jet&)>& F, const PhiField& psi,
                              double c1, double c2,
                              const std::vector<std::pair<double, double>>& check_grid,
                              double tol) {
  if (check_grid.empty()) throw HypothesisViolated("empty verification grid");
  for (auto [u, v] : check_grid) {
    Jet p = psi(u, v, 2);
    Jet seed = Jet::var_u(p.value(), 0.0, 1);
    double Fv = F(seed).value();
    double lap = flat_laplacian(p);
    if (std::abs(lap - Fv) > tol * (1.0 + std::abs(Fv)))
      throw HypothesisViolated("Delta psi - F(psi) = " + std::to_string(lap - Fv) + " at (" +
                               std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  Prop3Prediction out;
  out.f = [F, psi](double u, double v) {
    Jet p = psi(u, v, 0);
    Jet seed = Jet::var_u(p.value(), 0.0, 1);
    return F(seed).deriv(1, 0);  // F'(psi)
  };
  out.C = wedge(e41(1, 0, 0, 1), e41(0, -c2, c1, 0)) -
          wedge(e41(0, 1, 0, 0), e41(0, 0, 1, 0));
  return out;
}

NullTwoTypeSplit null_two_type_split(const PhiField& phi, const Domain& dom, double lambda,
                                     double c1, double c2,
                                     const std::vector<std::pair<double, double>>& grid,
                                     double tol) {
  if (lambda == 0.0) throw HypothesisViolated("lambda must be nonzero");
  if (grid.empty()) throw HypothesisViolated("empty verification grid");
  // hypothesis: Delta phi = lambda phi + c1 u + c2 v (positive Laplacian)
  for (auto [u, v] : grid) {
    Jet p = phi(u, v, 2);
    double rhs = lambda * p.value() + c1 * u + c2 * v;
    if (std::abs(flat_laplacian(p) - rhs) > tol * (1.0 + std::abs(rhs)))
      throw HypothesisViolated("Delta phi - lambda phi - (c1 u + c2 v) = " +
                               std::to_string(flat_laplacian(p) - rhs) + " at (" +
                               std::to_string(u) + ", " + std::to_string(v) + ")");
  }

  NullTwoTypeSplit out;
  out.x0.domain = dom;
  out.x0.eval = [lambda, c1, c2](double u, double v, int degree) {
    Jet l = (c1 * Jet::var_u(u, v, degree) + c2 * Jet::var_v(u, v, degree)) * (-1.0 / lambda);
    return std::vector<Jet>{l, Jet::var_u(u, v, degree), Jet::var_v(u, v, degree), l};
  };
  out.x1.domain = dom;
  out.x1.eval = [phi, lambda, c1, c2](double u, double v, int degree) {
    Jet l = (c1 * Jet::var_u(u, v, degree) + c2 * Jet::var_v(u, v, degree)) * (1.0 / lambda);
    Jet t = phi(u, v, degree) + l;
    Jet zero = Jet::constant(0.0, degree, u, v);
    return std::vector<Jet>{t, zero, zero, t};
  };

  for (auto [u, v] : grid) {
    auto j0 = out.x0.eval(u, v, 2);
    auto j1 = out.x1.eval(u, v, 2);
    double r0 = 0, r1 = 0;
    for (int c = 0; c < 4; ++c) {
      double l0 = flat_laplacian(j0[c]);
      double l1 = flat_laplacian(j1[c]) - lambda * j1[c].value();
      r0 += l0 * l0;
      r1 += l1 * l1;
    }
    out.residual_x0 = std::max(out.residual_x0, std::sqrt(r0));
    out.residual_x1 = std::max(out.residual_x1, std::sqrt(r1));
  }
  return out;
}

namespace {

PhiField phi_from_expr(const std::string& text) {
  ExprPtr e = parse(text);
  return [e](double u, double v, int degree) { return eval_jet(*e, u, v, degree); };
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;

  {
    CatalogEntry e;
    e.name = "plane";
    e.description = "flat plane phi = 0; maximal (H = 0), harmonic Gauss map";
    e.sf = SpaceForm::minkowski();
    e.is_graph = true;
    e.expected = {"Harmonic", std::nullopt, 0.0, "NotMarginallyTrapped"};
    e.make = [](const CatalogParams&) {
      GraphSurface gs;
      gs.phi = [](double u, double v, int d) { return Jet::constant(0.0, d, u, v); };
      gs.domain = {0, 1, 0, 1, nullptr};
      return build_graph_immersion(gs);
    };
    cat.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "harmonic-gauss";
    e.description = "phi = u^2; marginally trapped with harmonic Gauss map";
    e.sf = SpaceForm::minkowski();
    e.is_graph = true;
    e.expected = {"Harmonic", std::nullopt, 0.0, "MarginallyTrapped"};
    e.make = [](const CatalogParams&) {
      GraphSurface gs;
      gs.phi = [](double u, double v, int d) {
        Jet x = Jet::var_u(u, v, d);
        return x * x;
      };
      gs.domain = {0, 1, 0, 1, nullptr};
      return build_graph_immersion(gs);
    };
    cat.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "exp-example";
    e.description = "phi = exp(1/(u+v)) on eps < u+v < 1; proper pointwise second kind";
    e.sf = SpaceForm::minkowski();
    e.is_graph = true;
    e.expected = {"ProperPointwiseSecondKind", std::nullopt, 0.0, "MarginallyTrapped"};
    e.make = [](const CatalogParams& p) {
      // below u+v ~ 0.104 the inner products hit double-precision cancellation
      // (phi_u^2 ~ 1e13); the advertised strip keeps a guard above that wall
      double eps = std::max(p.eps, 0.105);
      GraphSurface gs;
      gs.phi = [](double u, double v, int d) {
        return exp(1.0 / (Jet::var_u(u, v, d) + Jet::var_v(u, v, d)));
      };
      gs.domain = {0.0, 1.0, 0.0, 1.0,
                   [eps](double u, double v) { return u + v > eps && u + v < 1.0; }};
      return build_graph_immersion(gs);
    };
    cat.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "square-eigenfunction";
    e.description = "phi = sin(n pi u) sin(n pi v) on the closed unit square; global second kind";
    e.sf = SpaceForm::minkowski();
    e.is_graph = true;
    e.expected = {"GlobalSecondKind", 2 * M_PI * M_PI, 0.0, "PartlyMarginallyTrapped"};
    e.make = [](const CatalogParams& p) {
      double n = p.n;
      GraphSurface gs;
      gs.phi = [n](double u, double v, int d) {
        return sin(n * M_PI * Jet::var_u(u, v, d)) * sin(n * M_PI * Jet::var_v(u, v, d));
      };
      gs.domain = {0, 1, 0, 1, nullptr};
      return build_graph_immersion(gs);
    };
    cat.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "desitter-product";
    e.description = "x = (1, sin u, cos u cos v, cos u sin v, 1) in S^4_1(1); K = 1, Delta nu = 2 nu";
    e.sf = SpaceForm::de_sitter();
    e.expected = {"GlobalFirstKind", 2.0, 1.0, "MarginallyTrapped"};
    e.make = [](const CatalogParams&) {
      Immersion imm;
      imm.domain = {-1.2, 1.2, 0.0, 6.18, nullptr};
      imm.eval = [](double u, double v, int d) {
        Jet ju = Jet::var_u(u, v, d), jv = Jet::var_v(u, v, d);
        Jet one = Jet::constant(1.0, d, u, v);
        return std::vector<Jet>{one, sin(ju), cos(ju) * cos(jv), cos(ju) * sin(jv), one};
      };
      return imm;
    };
    cat.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "user-graph";
    e.description = "graph surface of a user expression phi(u,v)";
    e.sf = SpaceForm::minkowski();
    e.is_graph = true;
    e.needs_phi = true;
    e.expected = {"", std::nullopt, 0.0, ""};
    e.make = [](const CatalogParams& p) {
      if (p.phi_expr.empty()) throw ConfigError("user-graph requires a phi expression");
      GraphSurface gs;
      gs.phi = phi_from_expr(p.phi_expr);
      gs.domain = {0, 1, 0, 1, nullptr};
      return build_graph_immersion(gs);
    };
    cat.push_back(e);
  }
  return cat;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> cat = build_catalog();
  return cat;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw ConfigError("no catalog entry named '" + name + "'");
}

}  // namespace trapgauss
