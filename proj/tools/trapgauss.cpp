#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trapgauss/expr.hpp"
#include "trapgauss/report.hpp"

namespace tg = trapgauss;

namespace {

struct CliState {
  tg::RunConfig cfg;
  std::string config_path;
  std::vector<double> grid6;
  std::vector<int> proj3;
};

void add_surface_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--config", st.config_path, "flat key=value config file; flags win");
  cmd->add_option("--surface", st.cfg.surface, "catalog entry name");
  cmd->add_option("--phi", st.cfg.phi, "phi(u,v) expression for a graph surface");
  cmd->add_option("--spaceform", st.cfg.spaceform, "minkowski | desitter | antidesitter");
  cmd->add_option("--grid", st.grid6, "u0,u1,nu,v0,v1,nv sampling grid")
      ->delimiter(',')
      ->expected(6);
  cmd->add_option("--eps", st.cfg.eps, "exp-example strip parameter");
  cmd->add_option("--n", st.cfg.n, "square-eigenfunction mode number");
}

void add_tol_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--tol-resid", st.cfg.tol_resid, "classifier residual gate");
  cmd->add_option("--tol-const", st.cfg.tol_const, "global-vs-proper f spread gate");
  cmd->add_option("--tol-zero", st.cfg.tol_zero, "Delta nu zero threshold");
  cmd->add_option("--tol-onshell", st.cfg.tol_onshell, "space-form position tolerance");
  cmd->add_option("--tol-causal", st.cfg.tol_causal, "causal classification tolerance");
  cmd->add_option("--tol-eigen", st.cfg.tol_eigen, "eigensolver residual tolerance");
}

void add_out_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--out", st.cfg.out, "artifact directory");
  cmd->add_option("--project", st.proj3, "three ambient coordinates for mesh export")
      ->delimiter(',')
      ->expected(3);
}

// Flat key=value file; '#' comments. Keys mirror the long flags. Values from
// the file apply only where the command line did not set the flag.
void apply_config_file(CLI::App* cmd, CliState& st) {
  if (st.config_path.empty()) return;
  std::ifstream f(st.config_path);
  if (!f) throw tg::ConfigError("cannot read config file '" + st.config_path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string entry = trim(line);
    if (entry.empty()) continue;
    auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw tg::ConfigError("config line " + std::to_string(lineno) + " is not key=value");
    std::string key = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    std::string flag = "--" + key;
    CLI::Option* opt = cmd->get_option_no_throw(flag);
    if (!opt) throw tg::ConfigError("config key '" + key + "' matches no flag of this command");
    if (opt->count() > 0) continue;  // flags win
    std::string parse_error;
    try {
      // route through the option parser so lists and numbers behave like flags
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw tg::ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

void apply_grid(CliState& st) {
  if (st.grid6.empty()) return;
  st.cfg.range = {{st.grid6[0], st.grid6[1], st.grid6[3], st.grid6[4]}};
  st.cfg.nu = static_cast<int>(st.grid6[2]);
  st.cfg.nv = static_cast<int>(st.grid6[5]);
}

void apply_project(CliState& st) {
  if (st.proj3.size() == 3) st.cfg.project = {st.proj3[0], st.proj3[1], st.proj3[2]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trapgauss: marginally trapped surfaces and their Gauss map taxonomy"};
  app.require_subcommand(1);
  // long-only help: the forge subcommand owns --h for the lattice spacing
  app.set_help_flag("--help", "print help and exit");

  CliState st;

  CLI::App* analyze = app.add_subcommand("analyze", "full geometry + classification report");
  add_surface_options(analyze, st);
  add_tol_options(analyze, st);
  add_out_options(analyze, st);

  CLI::App* classify = app.add_subcommand("classify", "classifier-only report");
  add_surface_options(classify, st);
  add_tol_options(classify, st);

  CLI::App* forge = app.add_subcommand("forge", "Dirichlet eigenpairs and forged surfaces");
  forge->add_option("--config", st.config_path, "flat key=value config file; flags win");
  forge->add_option("--domain", st.cfg.domain, "rect:a,b | disc:r | poly:file.csv");
  forge->add_option("--h", st.cfg.h, "lattice spacing");
  forge->add_option("--eigen-k", st.cfg.eigen_k, "number of eigenpairs");
  add_tol_options(forge, st);
  add_out_options(forge, st);

  CLI::App* cat = app.add_subcommand("catalog", "list catalog entries");

  std::string check_expr;
  CLI::App* parse_check = app.add_subcommand("parse-check", "lint a phi expression");
  parse_check->add_option("--phi", check_expr, "expression to parse")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    st.cfg.seed = tg::seed_from_env(st.cfg.seed);
    tg::Json report;
    if (analyze->parsed()) {
      apply_config_file(analyze, st);
      apply_grid(st);
      apply_project(st);
      st.cfg.command = "analyze";
      report = tg::run_analyze(st.cfg);
    } else if (classify->parsed()) {
      apply_config_file(classify, st);
      apply_grid(st);
      st.cfg.command = "classify";
      report = tg::run_classify(st.cfg);
    } else if (forge->parsed()) {
      apply_config_file(forge, st);
      apply_project(st);
      st.cfg.command = "forge";
      report = tg::run_forge(st.cfg);
    } else if (cat->parsed()) {
      report = tg::run_catalog();
    } else if (parse_check->parsed()) {
      tg::ExprPtr e = tg::parse(check_expr);
      std::cout << tg::print(*e) << "\n";
      return 0;
    }
    std::cout << tg::dump_json(report);
    return 0;
  } catch (const tg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 9;
  }
}
