#include "trapgauss/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "trapgauss/catalog.hpp"
#include "trapgauss/classifier.hpp"
#include "trapgauss/geometry.hpp"
#include "trapgauss/helmholtz.hpp"

namespace trapgauss {

namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::string fmt_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";  // normalize the sign of zero for byte-stable trips
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void dump_rec(const Json& j, std::string& out, int indent) {
  std::string pad(indent, ' ');
  std::string pad2(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad2 + Json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent + 2);
        out += (i + 1 < j.size()) ? ",\n" : "\n";
      }
      out += pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[";
      for (size_t i = 0; i < j.size(); ++i) {
        dump_rec(j[i], out, indent + 2);
        if (i + 1 < j.size()) out += ", ";
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += fmt_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

struct SurfaceSetup {
  Immersion imm;
  SpaceForm sf;
  std::string name;
};

SurfaceSetup resolve_surface(const RunConfig& cfg) {
  SurfaceSetup s;
  CatalogParams params;
  params.phi_expr = cfg.phi;
  params.eps = cfg.eps;
  params.n = cfg.n;
  std::string name = cfg.surface;
  if (name.empty()) {
    if (cfg.phi.empty()) throw ConfigError("need --surface or --phi");
    name = "user-graph";
  }
  const CatalogEntry& entry = catalog_entry(name);
  if (entry.needs_phi && cfg.phi.empty())
    throw ConfigError("catalog entry '" + name + "' requires --phi");
  if (!entry.needs_phi && !cfg.phi.empty())
    throw ConfigError("'" + name + "' already fixes phi; exactly one surface source allowed");
  if (!cfg.spaceform.empty() && !(spaceform_by_name(cfg.spaceform) == entry.sf))
    throw ConfigError("surface '" + name + "' lives in " + std::string(entry.sf.name()) +
                      ", not " + cfg.spaceform);
  s.imm = entry.make(params);
  s.sf = entry.sf;
  s.name = name;
  return s;
}

std::vector<std::pair<double, double>> sample_grid(const Immersion& imm, const RunConfig& cfg) {
  double u0 = imm.domain.u0, u1 = imm.domain.u1, v0 = imm.domain.v0, v1 = imm.domain.v1;
  if (cfg.range) {
    u0 = (*cfg.range)[0];
    u1 = (*cfg.range)[1];
    v0 = (*cfg.range)[2];
    v1 = (*cfg.range)[3];
  }
  if (cfg.nu < 2 || cfg.nv < 2) throw ConfigError("grid counts must be >= 2 per axis");
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j < cfg.nv; ++j)
    for (int i = 0; i < cfg.nu; ++i) {
      double u = u0 + (u1 - u0) * i / (cfg.nu - 1);
      double v = v0 + (v1 - v0) * j / (cfg.nv - 1);
      if (imm.domain.contains(u, v)) pts.push_back({u, v});
    }
  if (pts.empty()) throw ConfigError("no grid points fall inside the surface domain");
  return pts;
}

Json config_echo(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  if (!cfg.surface.empty()) j["surface"] = cfg.surface;
  if (!cfg.phi.empty()) j["phi"] = cfg.phi;
  if (!cfg.spaceform.empty()) j["spaceform"] = cfg.spaceform;
  if (cfg.range)
    j["range"] = {(*cfg.range)[0], (*cfg.range)[1], (*cfg.range)[2], (*cfg.range)[3]};
  j["nu"] = cfg.nu;
  j["nv"] = cfg.nv;
  j["eps"] = cfg.eps;
  j["n"] = cfg.n;
  if (!cfg.domain.empty()) {
    j["domain"] = cfg.domain;
    j["h"] = cfg.h;
    j["eigen_k"] = cfg.eigen_k;
  }
  Json tols;
  tols["resid"] = cfg.tol_resid;
  tols["const"] = cfg.tol_const;
  tols["zero"] = cfg.tol_zero;
  tols["onshell"] = cfg.tol_onshell;
  tols["causal"] = cfg.tol_causal;
  tols["eigen"] = cfg.tol_eigen;
  j["tolerances"] = tols;
  j["seed"] = cfg.seed;
  return j;
}

struct Stats {
  double min = 0, max = 0, mean = 0;
  bool first = true;
  void add(double x) {
    if (first) { min = max = x; mean = 0; first = false; }
    min = std::min(min, x);
    max = std::max(max, x);
    mean += x;
  }
  Json to_json(size_t count) const {
    Json j;
    j["min"] = min;
    j["max"] = max;
    j["mean"] = count ? mean / count : 0.0;
    return j;
  }
};

Json bivector_json(const Bivector& b) {
  Json j = Json::array();
  for (double x : b.p) j.push_back(x);
  return j;
}

Json fit_json(const OneTypeFit& fit, bool with_C) {
  Json j;
  j["residual"] = fit.residual;
  j["residual_abs"] = fit.residual_abs;
  j["f_mean"] = fit.f_mean;
  j["f_spread"] = fit.f_spread;
  j["used"] = fit.used;
  if (with_C) j["C"] = bivector_json(fit.C);
  return j;
}

Json taxonomy_json(const Taxonomy& tax) {
  Json j;
  j["tag"] = to_string(tax.tag);
  if (tax.tag == TaxonomyTag::GlobalFirstKind || tax.tag == TaxonomyTag::GlobalSecondKind)
    j["lambda"] = tax.lambda;
  if (tax.tag == TaxonomyTag::GlobalSecondKind || tax.tag == TaxonomyTag::ProperPointwiseSecondKind)
    j["C"] = bivector_json(tax.C);
  if (tax.has_first) j["first_kind"] = fit_json(tax.first_kind, false);
  if (tax.has_second) j["second_kind"] = fit_json(tax.second_kind, true);
  return j;
}

void write_analysis_artifacts(const RunConfig& cfg, const SurfaceSetup& s, Json& report);

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += "\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("TRAPGAUSS_SEED");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  unsigned long long x = std::strtoull(env, &end, 10);
  if (end == env || *end) throw ConfigError("TRAPGAUSS_SEED must be an unsigned integer");
  return x;
}

std::string export_mesh(const std::vector<std::vector<std::optional<AmbientVector>>>& rows,
                        std::array<int, 3> projection) {
  auto [a, b, c] = projection;
  if (a == b || a == c || b == c)
    throw DegenerateProjection("projection coordinates must be distinct");
  std::string out = "# trapgauss mesh\n# projection: " + std::to_string(a) + " " +
                    std::to_string(b) + " " + std::to_string(c) + "\n";
  std::vector<std::vector<int>> vid(rows.size());
  int next = 1;  // obj indices are 1-based
  for (size_t r = 0; r < rows.size(); ++r) {
    vid[r].assign(rows[r].size(), 0);
    for (size_t s = 0; s < rows[r].size(); ++s) {
      if (!rows[r][s]) continue;
      const AmbientVector& p = *rows[r][s];
      if (a >= p.dim() || b >= p.dim() || c >= p.dim())
        throw DegenerateProjection("projection coordinate out of range");
      out += "v " + fmt_double(p[a]) + " " + fmt_double(p[b]) + " " + fmt_double(p[c]) + "\n";
      vid[r][s] = next++;
    }
  }
  for (size_t r = 0; r + 1 < rows.size(); ++r)
    for (size_t s = 0; s + 1 < rows[r].size(); ++s) {
      if (s + 1 >= rows[r + 1].size()) continue;
      int p00 = vid[r][s], p01 = vid[r][s + 1];
      int p10 = vid[r + 1][s], p11 = vid[r + 1][s + 1];
      if (p00 && p01 && p10 && p11) {
        out += "f " + std::to_string(p00) + " " + std::to_string(p01) + " " +
               std::to_string(p11) + "\n";
        out += "f " + std::to_string(p00) + " " + std::to_string(p11) + " " +
               std::to_string(p10) + "\n";
      }
    }
  return out;
}

Json run_analyze(const RunConfig& cfg) {
  double t0 = now_ms();
  SurfaceSetup s = resolve_surface(cfg);
  auto grid = sample_grid(s.imm, cfg);
  GeoTolerances gtol{cfg.tol_onshell, cfg.tol_causal};

  Stats stat_K, stat_KD, stat_H2;
  double egregium = 0, route = 0, beltrami = 0, dh_max = 0;
  bool any_route = false;
  int lightlike = 0, zero = 0, other = 0;
  std::vector<std::pair<double, double>> zero_locus;
  std::vector<GaussSample> samples;
  std::optional<PointGeometry> sk_point;  // light-like H sample for the structure fit
  samples.reserve(grid.size());

  for (auto [u, v] : grid) {
    PointGeometry pg = point_geometry(s.imm, u, v, s.sf, gtol);
    stat_K.add(pg.K);
    stat_KD.add(pg.KD);
    stat_H2.add(inner(pg.H, pg.H));
    egregium = std::max(egregium, std::abs(pg.K - pg.K_intrinsic));
    if (pg.laplacian_nu_structural) {
      Bivector d = pg.laplacian_nu_direct - *pg.laplacian_nu_structural;
      route = std::max(route,
                       d.euclidean_norm() / (1.0 + pg.laplacian_nu_direct.euclidean_norm()));
      any_route = true;
    }
    beltrami = std::max(beltrami, beltrami_check(s.imm, u, v, s.sf, gtol));
    dh_max = std::max({dh_max, pg.DH1.euclidean_norm(), pg.DH2.euclidean_norm()});
    switch (pg.Hclass) {
      case CausalClass::Lightlike:
        ++lightlike;
        if (!sk_point) sk_point = pg;
        break;
      case CausalClass::Zero: ++zero; zero_locus.push_back({u, v}); break;
      default: ++other; break;
    }
    samples.push_back({u, v, pg.nu, pg.laplacian_nu_direct});
  }
  double t_geom = now_ms();

  TrappedKind verdict = trapped_kind_from_counts(lightlike, zero, other);

  ClassifyOptions copt{cfg.tol_resid, cfg.tol_const, cfg.tol_zero};
  Taxonomy tax = classify(samples, copt);
  double t_classify = now_ms();

  Json report;
  report["schema_version"] = "1";
  report["config"] = config_echo(cfg);
  report["surface"] = s.name;
  report["spaceform"] = s.sf.name();
  report["grid"] = Json{{"points", grid.size()}};

  Json geom;
  geom["K"] = stat_K.to_json(grid.size());
  geom["KD"] = stat_KD.to_json(grid.size());
  geom["H_norm_sq"] = stat_H2.to_json(grid.size());
  report["geometry"] = geom;

  Json trapped;
  trapped["verdict"] = to_string(verdict);
  trapped["lightlike"] = lightlike;
  trapped["zero"] = zero;
  trapped["other"] = other;
  if (!zero_locus.empty()) {
    Json zl = Json::array();
    for (size_t i = 0; i < zero_locus.size() && i < 16; ++i)
      zl.push_back({zero_locus[i].first, zero_locus[i].second});
    trapped["zero_locus"] = zl;
  }
  report["trapped"] = trapped;

  report["taxonomy"] = taxonomy_json(tax);

  bool second = tax.tag == TaxonomyTag::GlobalSecondKind ||
                tax.tag == TaxonomyTag::ProperPointwiseSecondKind;
  if (second && sk_point) {
    SecondKindStructure sks = second_kind_structure(tax.second_kind, *sk_point);
    Json j;
    j["C12"] = sks.C12;
    j["C34"] = sks.C34;
    j["C1"] = sks.C1;
    j["C2"] = sks.C2;
    j["residual"] = sks.residual;
    report["second_kind_structure"] = j;
  }

  Json checks;
  checks["route_equivalence_max"] = any_route ? Json(route) : Json(nullptr);
  checks["beltrami_max"] = beltrami;
  checks["egregium_max"] = egregium;
  checks["dh_max"] = dh_max;
  report["checks"] = checks;

  if (s.sf.delta == 0) {
    try {
      MembershipResult mr = membership_check(s.imm, grid, s.sf.ambient);
      Json j;
      Json center = Json::array();
      for (double x : mr.center.c) center.push_back(x);
      j["center"] = center;
      j["radius_sq"] = mr.radius_sq;
      j["residual"] = mr.residual;
      report["membership"] = j;
    } catch (const RankDeficient& e) {
      report["membership"] = Json{{"error", e.what()}};
    }
  }

  Json timings;
  timings["geometry_ms"] = t_geom - t0;
  timings["classify_ms"] = t_classify - t_geom;
  report["timings_ms"] = timings;

  write_analysis_artifacts(cfg, s, report);
  return report;
}

Json run_classify(const RunConfig& cfg) {
  SurfaceSetup s = resolve_surface(cfg);
  auto grid = sample_grid(s.imm, cfg);
  GeoTolerances gtol{cfg.tol_onshell, cfg.tol_causal};
  std::vector<GaussSample> samples;
  samples.reserve(grid.size());
  for (auto [u, v] : grid) {
    PointGeometry pg = point_geometry(s.imm, u, v, s.sf, gtol);
    samples.push_back({u, v, pg.nu, pg.laplacian_nu_direct});
  }
  ClassifyOptions copt{cfg.tol_resid, cfg.tol_const, cfg.tol_zero};
  Taxonomy tax = classify(samples, copt);
  Json report;
  report["schema_version"] = "1";
  report["config"] = config_echo(cfg);
  report["surface"] = s.name;
  report["taxonomy"] = taxonomy_json(tax);
  return report;
}

namespace {

DomainSpec parse_domain(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "rect") {
    double a, b;
    if (std::sscanf(args.c_str(), "%lf,%lf", &a, &b) != 2)
      throw ConfigError("expected rect:a,b");
    return DomainSpec::rectangle(a, b);
  }
  if (kind == "disc") {
    double r;
    if (std::sscanf(args.c_str(), "%lf", &r) != 1) throw ConfigError("expected disc:r");
    return DomainSpec::disc(r);
  }
  if (kind == "poly") {
    std::ifstream f(args);
    if (!f) throw IoError("cannot read polygon file '" + args + "'");
    std::vector<std::pair<double, double>> vs;
    std::string line;
    while (std::getline(f, line)) {
      if (line.empty() || line[0] == '#') continue;
      double x, y;
      if (std::sscanf(line.c_str(), "%lf,%lf", &x, &y) != 2)
        throw ConfigError("polygon file line '" + line + "' is not x,y");
      vs.push_back({x, y});
    }
    return DomainSpec::polygon(std::move(vs));
  }
  throw ConfigError("domain must be rect:a,b, disc:r or poly:file.csv");
}

void write_analysis_artifacts(const RunConfig& cfg, const SurfaceSetup& s, Json& report) {
  if (cfg.out.empty()) return;
  std::filesystem::create_directories(cfg.out);
  // structured sample grid for the mesh
  double u0 = s.imm.domain.u0, u1 = s.imm.domain.u1, v0 = s.imm.domain.v0, v1 = s.imm.domain.v1;
  if (cfg.range) {
    u0 = (*cfg.range)[0]; u1 = (*cfg.range)[1];
    v0 = (*cfg.range)[2]; v1 = (*cfg.range)[3];
  }
  std::vector<std::vector<std::optional<AmbientVector>>> rows(cfg.nv);
  for (int j = 0; j < cfg.nv; ++j) {
    rows[j].resize(cfg.nu);
    for (int i = 0; i < cfg.nu; ++i) {
      double u = u0 + (u1 - u0) * i / (cfg.nu - 1);
      double v = v0 + (v1 - v0) * j / (cfg.nv - 1);
      if (!s.imm.domain.contains(u, v)) continue;
      auto jets = s.imm.eval(u, v, 0);
      AmbientVector p = AmbientVector::zero(s.sf.ambient);
      for (int c = 0; c < s.sf.ambient.dim; ++c) p[c] = jets[c].value();
      rows[j][i] = p;
    }
  }
  std::string mesh = export_mesh(rows, cfg.project);
  std::string mesh_path = cfg.out + "/mesh.obj";
  write_file(mesh_path, mesh);
  report["artifacts"] = Json{{"mesh", "mesh.obj"}};
  write_file(cfg.out + "/report.json", dump_json(report));
}

}  // namespace

Json run_forge(const RunConfig& cfg) {
  if (cfg.domain.empty()) throw ConfigError("forge needs --domain");
  double t0 = now_ms();
  DomainSpec spec = parse_domain(cfg.domain);
  Grid grid = rasterize(spec, cfg.h);
  SparseOperator A = assemble(grid);
  auto pairs = smallest_eigenpairs(A, cfg.eigen_k, cfg.tol_eigen, cfg.seed);
  double t_eigen = now_ms();

  Json report;
  report["schema_version"] = "1";
  report["config"] = config_echo(cfg);
  report["grid"] = Json{{"h", grid.h}, {"interior_nodes", grid.n()}};
  Json lambdas = Json::array();
  for (const auto& ep : pairs) lambdas.push_back(ep.lambda);
  report["lambdas"] = lambdas;

  Json jpairs = Json::array();
  Json artifacts = Json::array();
  for (size_t k = 0; k < pairs.size(); ++k) {
    ForgeResult fr = forge(grid, pairs[k]);
    Json j;
    j["lambda"] = pairs[k].lambda;
    j["eigen_residual"] = pairs[k].residual;
    j["forge_max_residual"] = fr.max_residual;
    j["C"] = bivector_json(fr.C);
    j["verified_nodes"] = fr.verified_nodes;
    jpairs.push_back(j);

    if (!cfg.out.empty()) {
      std::filesystem::create_directories(cfg.out);
      std::string csv = "u,v,phi\n";
      for (int p = 0; p < grid.n(); ++p) {
        auto [i, jj] = grid.nodes[p];
        csv += fmt_double(grid.x_of(i)) + "," + fmt_double(grid.y_of(jj)) + "," +
               fmt_double(fr.phi[p]) + "\n";
      }
      std::string csv_name = "phi_" + std::to_string(k + 1) + ".csv";
      write_file(cfg.out + "/" + csv_name, csv);

      std::vector<std::vector<std::optional<AmbientVector>>> rows(grid.ny);
      for (int jj = 0; jj < grid.ny; ++jj) rows[jj].resize(grid.nx);
      for (int p = 0; p < grid.n(); ++p) {
        auto [i, jj] = grid.nodes[p];
        rows[jj][i] = AmbientVector(
            Signature::minkowski4(),
            {fr.phi[p], grid.x_of(i), grid.y_of(jj), fr.phi[p]});
      }
      std::string mesh_name = "mesh_" + std::to_string(k + 1) + ".obj";
      write_file(cfg.out + "/" + mesh_name, export_mesh(rows, cfg.project));
      artifacts.push_back(Json{{"phi_csv", csv_name}, {"mesh", mesh_name}});
    }
  }
  report["pairs"] = jpairs;
  if (!cfg.out.empty()) report["artifacts"] = artifacts;

  Json timings;
  timings["eigen_ms"] = t_eigen - t0;
  timings["total_ms"] = now_ms() - t0;
  report["timings_ms"] = timings;
  if (!cfg.out.empty()) write_file(cfg.out + "/report.json", dump_json(report));
  return report;
}

Json run_catalog() {
  Json report;
  report["schema_version"] = "1";
  Json entries = Json::array();
  for (const auto& e : catalog()) {
    Json j;
    j["name"] = e.name;
    j["description"] = e.description;
    j["spaceform"] = e.sf.name();
    j["needs_phi"] = e.needs_phi;
    if (!e.expected.taxonomy.empty()) {
      Json exp;
      exp["taxonomy"] = e.expected.taxonomy;
      if (e.expected.lambda) exp["lambda"] = *e.expected.lambda;
      if (e.expected.K) exp["K"] = *e.expected.K;
      if (!e.expected.trapped.empty()) exp["trapped"] = e.expected.trapped;
      j["expected"] = exp;
    }
    entries.push_back(j);
  }
  report["entries"] = entries;
  return report;
}

}  // namespace trapgauss
