#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trapgauss/algebra.hpp"

namespace trapgauss {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command = "analyze";
  // surface source: exactly one of catalog name / phi expression / forge domain
  std::string surface;
  std::string phi;
  std::string spaceform;  // optional; must match the catalog entry when given
  std::optional<std::array<double, 4>> range;  // u0,u1,v0,v1 override
  int nu = 20, nv = 20;
  double eps = 0.1;  // exp-example strip parameter
  int n = 1;         // square-eigenfunction mode

  std::string domain;  // forge: rect:a,b | disc:r | poly:file.csv
  double h = 1.0 / 64;
  int eigen_k = 1;

  double tol_resid = 1e-6, tol_const = 1e-6, tol_zero = 1e-8;
  double tol_onshell = 1e-8, tol_causal = 1e-9, tol_eigen = 1e-9;

  std::uint64_t seed = 0x5eed5eedULL;  // TRAPGAUSS_SEED overrides
  std::string out;                     // artifact directory; empty = stdout only
  std::array<int, 3> project = {1, 2, 0};
};

// Full pipeline: grid sweep, curvature stats, trapped verdict, classification,
// invariant checks, membership fit (delta = 0).
Json run_analyze(const RunConfig& cfg);

// Classifier-only variant of run_analyze.
Json run_classify(const RunConfig& cfg);

// Dirichlet eigenpairs on the configured domain, forged surfaces, artifacts.
Json run_forge(const RunConfig& cfg);

// Lists the catalog as a report.
Json run_catalog();

// Wavefront-style text for a structured grid of samples (row-major; absent
// samples make holes). Quads are split into two triangles.
std::string export_mesh(const std::vector<std::vector<std::optional<AmbientVector>>>& rows,
                        std::array<int, 3> projection);

// Deterministic writer: ordered keys, doubles as %.17g.
std::string dump_json(const Json& j);

void write_file(const std::string& path, const std::string& content);

std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace trapgauss
