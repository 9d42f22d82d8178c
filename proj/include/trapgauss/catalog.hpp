#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trapgauss/geometry.hpp"

namespace trapgauss {

// Scalar field phi(u,v) exposed through its jets.
using PhiField = std::function<Jet(double u, double v, int degree)>;

struct GraphSurface {
  PhiField phi;
  Domain domain;
};

// x(u,v) = (phi, u, v, phi) in E^4_1; the induced metric is the identity.
Immersion build_graph_immersion(const GraphSurface& gs);

struct GraphClosedForms {
  AmbientVector H;  // -(Delta phi / 2) (1,0,0,1)
  Bivector nu;      // (1,0,0,1)^(-phi_v e1 + phi_u e2) + (0,1,0,0)^(0,0,1,0)
  Bivector dnu;     // (1,0,0,1)^(-Delta(phi_v) e1 + Delta(phi_u) e2)
};
GraphClosedForms graph_closed_forms(const PhiField& phi, double u, double v);

struct Prop3Prediction {
  std::function<double(double, double)> f;  // F'(psi(u,v)) by univariate jet differentiation
  Bivector C;                               // (1,0,0,1)^(0,-c2,c1,0) - (0,1,0,0)^(0,0,1,0)
};

// Requires Delta psi = F(psi) to hold on the check grid (HypothesisViolated
// otherwise); F supplied as a jet-evaluable univariate function.
Prop3Prediction prop3_predict(const std::function<Jet(const Jet&)>& F, const PhiField& psi,
                              double c1, double c2,
                              const std::vector<std::pair<double, double>>& check_grid,
                              double tol = 1e-8);

struct NullTwoTypeSplit {
  Immersion x0;  // harmonic part
  Immersion x1;  // lambda-eigenpart
  double residual_x0 = 0;  // max |Delta x0| over the grid
  double residual_x1 = 0;  // max |Delta x1 - lambda x1|
};

// Splits the graph of phi into x0 + x1 when Delta phi = lambda phi + c1 u + c2 v
// holds on the grid (positive Laplacian).
NullTwoTypeSplit null_two_type_split(const PhiField& phi, const Domain& dom, double lambda,
                                     double c1, double c2,
                                     const std::vector<std::pair<double, double>>& grid,
                                     double tol = 1e-8);

struct CatalogParams {
  std::string phi_expr;  // for the expression-driven entry
  double eps = 0.1;      // exp-example strip parameter
  int n = 1;             // square-eigenfunction mode
};

// Documentation metadata; never consumed by the math code.
struct ExpectedInfo {
  std::string taxonomy;
  std::optional<double> lambda;
  std::optional<double> K;
  std::string trapped;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  SpaceForm sf;
  bool is_graph = false;
  bool needs_phi = false;
  std::function<Immersion(const CatalogParams&)> make;
  ExpectedInfo expected;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);

}  // namespace trapgauss
