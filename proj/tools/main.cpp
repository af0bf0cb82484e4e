// ssfem command-line driver: reports, solvers and post-processing.

#include "ssfem/config.hpp"
#include "ssfem/errors.hpp"
#include "ssfem/fem.hpp"
#include "ssfem/field.hpp"
#include "ssfem/intrusive.hpp"
#include "ssfem/kle.hpp"
#include "ssfem/lognormal.hpp"
#include "ssfem/nisp.hpp"
#include "ssfem/pce.hpp"
#include "ssfem/postproc.hpp"
#include "ssfem/sparsegrid.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ssfem;

enum ExitCode { Ok = 0, Failure = 1, BadConfig = 2, NoConvergence = 3, BadIo = 4 };

using Overrides = std::map<std::string, std::string>;

void add_key(CLI::App* cmd, const std::string& flag, const std::string& key, Overrides& ov, const std::string& help) {
  cmd->add_option_function<std::string>(flag, [&ov, key](const std::string& v) { ov[key] = v; }, help);
}

void add_mesh_options(CLI::App* cmd, Overrides& ov) {
  add_key(cmd, "--mesh", "mesh", ov, "Mesh file (default: structured nx x ny)");
  add_key(cmd, "--nx", "nx", ov, "Structured mesh cells along x (default 24)");
  add_key(cmd, "--ny", "ny", ov, "Structured mesh cells along y (default 24)");
  add_key(cmd, "--f", "f", ov, "Constant source term (default 1)");
  add_key(cmd, "--out", "out", ov, "Output CSV (default: stdout)");
  add_key(cmd, "--vtk", "vtk", ov, "Legacy VTK export");
}

void add_field_options(CLI::App* cmd, Overrides& ov) {
  add_key(cmd, "--L", "L", ov, "Stochastic dimension / KL terms (default 3)");
  add_key(cmd, "--p-u", "p_u", ov, "Solution PCE order (default 3)");
  add_key(cmd, "--p-A", "p_A", ov, "Input PCE order (default 2 p_u)");
  add_key(cmd, "--sigma", "sigma", ov, "Std deviation of the Gaussian field (default 0.3)");
  add_key(cmd, "--corr-length", "corr_length", ov, "Correlation length b (default 1)");
  add_key(cmd, "--g0", "g0", ov, "Mean of the Gaussian field (default 0)");
}

RunConfig resolve(const std::string& config_path, const Overrides& ov) {
  RunConfig cfg;
  if (!config_path.empty()) load_config(config_path, cfg);
  for (const auto& [k, v] : ov) cfg.set(k, v);
  cfg.validate();
  return cfg;
}

void write_field(const RunConfig& cfg, const mesh::TriMesh& mesh, const StochasticField& field) {
  if (cfg.out.empty()) write_field_csv(std::cout, mesh.nodes, field);
  else write_field_csv(cfg.out, mesh.nodes, field);
  if (!cfg.vtk.empty()) {
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < field.num_terms(); ++j)
      if (pce::total_degree(field.basis().term(j)) <= 1) rows.push_back(j);
    postproc::export_solution_vtk(cfg.vtk, mesh, field, rows);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_kle_report(double a, double b, double sigma2, int rows) {
  const auto exp = kle::eigen_2d(a, b, sigma2, rows);
  kle::write_report(std::cout, exp, rows);
  return Ok;
}

int run_grid_report(int dim, int level) {
  const auto grid = sparsegrid::smolyak(dim, level);
  std::cout << "# d=" << dim << " l=" << level << " points=" << grid.size() << '\n';
  sparsegrid::write_grid_table(std::cout, grid);
  return Ok;
}

int run_solve_det(const RunConfig& cfg, double coeff, const std::vector<double>& xi) {
  const auto problem = build_problem(cfg);
  const auto& m = problem.mesh;
  std::vector<double> u;
  if (xi.empty()) {
    const std::vector<double> c(m.num_nodes(), coeff);
    u = fem::solve_deterministic(m, c, cfg.f, cfg.det_tol);
  } else {
    if (static_cast<int>(xi.size()) != cfg.L)
      throw ConfigError("solve-det: --xi needs " + std::to_string(cfg.L) + " values");
    u.assign(m.num_nodes(), 0.0);
    nisp::SampleSolver(m, problem.modes, cfg.f, cfg.det_tol).solve(xi, u);
  }
  if (cfg.out.empty()) {
    auto basis = std::make_shared<const pce::PceBasis>(1, 0);
    write_field_csv(std::cout, m.nodes, StochasticField(basis, m.num_nodes(), FieldRole::Solution, u));
  } else {
    write_nodal_csv(cfg.out, m.nodes, u);
  }
  if (!cfg.vtk.empty()) {
    const std::vector<postproc::NamedField> named{{"u", u}};
    postproc::export_vtk(cfg.vtk, m, named);
  }
  return Ok;
}

int run_solve_intrusive(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto problem = build_problem(cfg);
  auto basis_a = std::make_shared<const pce::PceBasis>(cfg.L, cfg.input_order());
  auto basis_u = std::make_shared<const pce::PceBasis>(cfg.L, cfg.p_u);
  const auto l_field = lognormal::lognormal_pce(problem.modes, basis_a);
  intrusive::IntrusiveOptions opts;
  opts.rel_tol = cfg.tol;
  const auto sol = intrusive::solve_intrusive(problem.mesh, l_field, cfg.f, basis_u, opts);
  if (!cfg.cijk_out.empty()) pce::write_cijk(cfg.cijk_out, pce::build_cijk(*basis_a, *basis_u));
  write_field(cfg, problem.mesh, sol.field);
  std::cerr << "intrusive: nodes=" << problem.mesh.num_nodes() << " terms=" << basis_u->size()
            << " input_terms=" << basis_a->size() << " cijk_nnz=" << sol.cijk_nnz << " cg_iterations="
            << sol.cg.iterations << " rel_residual=" << sol.cg.rel_residual << " time=" << seconds_since(t0)
            << "s\n";
  return Ok;
}

int run_solve_nisp(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto problem = build_problem(cfg);
  auto basis_u = std::make_shared<const pce::PceBasis>(cfg.L, cfg.p_u);
  const auto grid = sparsegrid::smolyak(cfg.L, cfg.level);
  nisp::NispOptions opts;
  opts.rel_tol = cfg.det_tol;
  const auto field = nisp::nisp_solve(problem.mesh, problem.modes, basis_u, grid, cfg.f, opts);
  write_field(cfg, problem.mesh, field);
  std::cerr << "nisp: nodes=" << problem.mesh.num_nodes() << " terms=" << basis_u->size() << " level=" << cfg.level
            << " samples=" << nisp::sample_count(grid) << " time=" << seconds_since(t0) << "s\n";
  return Ok;
}

int run_compare(const std::string& a, const std::string& b, int L, int p, const std::string& out) {
  auto basis = std::make_shared<const pce::PceBasis>(L, p);
  const auto fa = load_field_csv(a, basis, FieldRole::Solution);
  const auto fb = load_field_csv(b, basis, FieldRole::Solution);
  const auto report = postproc::compare_fields(fa, fb);
  if (out.empty()) {
    std::cout << report.to_json() << '\n';
  } else {
    std::ofstream os(out);
    if (!os) throw IoError("cannot open '" + out + "' for writing");
    os << report.to_json() << '\n';
  }
  return Ok;
}

int run_stats(const std::string& in, int L, int p, const std::string& out, const std::string& vtk,
              const std::string& mesh_path) {
  auto basis = std::make_shared<const pce::PceBasis>(L, p);
  const auto csv = read_field_csv(in);
  if (csv.num_terms != basis->size())
    throw IoError("stats: '" + in + "' has " + std::to_string(csv.num_terms) + " coefficient columns, basis(" +
                  std::to_string(L) + "," + std::to_string(p) + ") has " + std::to_string(basis->size()));
  const StochasticField field(basis, csv.nodes.size(), FieldRole::Solution, csv.coeffs);
  const auto stats = postproc::field_stats(field);

  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw IoError("cannot open '" + out + "' for writing");
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << "node,x,y,mean,std\n" << std::setprecision(15);
  for (std::size_t n = 0; n < csv.nodes.size(); ++n)
    os << n << ',' << csv.nodes[n][0] << ',' << csv.nodes[n][1] << ',' << stats.mean[n] << ',' << stats.std_dev[n]
       << '\n';

  if (!vtk.empty()) {
    if (mesh_path.empty()) throw ConfigError("stats: --vtk needs --mesh (the CSV carries no connectivity)");
    const auto loaded = mesh::load_mesh(mesh_path);
    if (loaded.mesh.num_nodes() != csv.nodes.size())
      throw ConfigError("stats: mesh and field node counts differ");
    const std::vector<postproc::NamedField> named{{"mean", stats.mean}, {"std", stats.std_dev}};
    postproc::export_vtk(vtk, loaded.mesh, named);
  }
  return Ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral stochastic FEM toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ssfem 0.1.0");

  auto* kle_cmd = app.add_subcommand("kle-report", "Eigenpairs of the exponential kernel");
  double kle_a = 0.5, kle_b = 1.0, kle_sigma2 = 1.0;
  int kle_rows = 7;
  kle_cmd->add_option("--a", kle_a, "Half-width of the square [-a,a]^2")->capture_default_str();
  kle_cmd->add_option("--b,--corr-length", kle_b, "Correlation length")->capture_default_str();
  kle_cmd->add_option("--sigma2", kle_sigma2, "Variance")->capture_default_str();
  kle_cmd->add_option("--rows", kle_rows, "Rows per table")->capture_default_str()->check(CLI::PositiveNumber);

  auto* grid_cmd = app.add_subcommand("grid-report", "Smolyak Gauss-Hermite node/weight table");
  int grid_d = 2, grid_l = 3;
  grid_cmd->add_option("-d,--dim", grid_d, "Dimension")->capture_default_str()->check(CLI::PositiveNumber);
  grid_cmd->add_option("-l,--level", grid_l, "Level")->capture_default_str()->check(CLI::PositiveNumber);

  Overrides det_ov, int_ov, nisp_ov;
  std::string det_cfg, int_cfg, nisp_cfg;

  auto* det_cmd = app.add_subcommand("solve-det", "Deterministic P1 solve");
  double det_coeff = 1.0;
  std::vector<double> det_xi;
  det_cmd->add_option("--config", det_cfg, "key=value config file");
  add_mesh_options(det_cmd, det_ov);
  add_field_options(det_cmd, det_ov);
  add_key(det_cmd, "--tol", "det_tol", det_ov, "CG relative residual (default 1e-10)");
  det_cmd->add_option("--coeff", det_coeff, "Constant diffusion coefficient")->capture_default_str();
  det_cmd->add_option("--xi", det_xi, "Germ point: solve one exact lognormal realization instead")->delimiter(',');

  auto* int_cmd = app.add_subcommand("solve-intrusive", "Stochastic Galerkin solve");
  int_cmd->add_option("--config", int_cfg, "key=value config file");
  add_mesh_options(int_cmd, int_ov);
  add_field_options(int_cmd, int_ov);
  add_key(int_cmd, "--tol", "tol", int_ov, "CG relative residual (default 1e-8)");
  add_key(int_cmd, "--cijk-out", "cijk_out", int_ov, "Write the C_ijk tensor as text");

  auto* nisp_cmd = app.add_subcommand("solve-nisp", "Non-intrusive spectral projection");
  nisp_cmd->add_option("--config", nisp_cfg, "key=value config file");
  add_mesh_options(nisp_cmd, nisp_ov);
  add_field_options(nisp_cmd, nisp_ov);
  add_key(nisp_cmd, "--tol", "det_tol", nisp_ov, "Per-sample CG relative residual (default 1e-10)");
  add_key(nisp_cmd, "--level", "level", nisp_ov, "Sparse-grid level (default 3)");

  auto* cmp_cmd = app.add_subcommand("compare", "Compare two solution CSVs (JSON report)");
  std::string cmp_a, cmp_b, cmp_out;
  int cmp_L = 3, cmp_p = 3;
  cmp_cmd->add_option("a", cmp_a, "Reference field CSV")->required();
  cmp_cmd->add_option("b", cmp_b, "Other field CSV")->required();
  cmp_cmd->add_option("--L", cmp_L, "Stochastic dimension")->capture_default_str();
  cmp_cmd->add_option("--p-u", cmp_p, "PCE order")->capture_default_str();
  cmp_cmd->add_option("--out", cmp_out, "JSON output (default: stdout)");

  auto* stats_cmd = app.add_subcommand("stats", "Per-node mean and std of a solution CSV");
  std::string st_in, st_out, st_vtk, st_mesh;
  int st_L = 3, st_p = 3;
  stats_cmd->add_option("field", st_in, "Solution CSV")->required();
  stats_cmd->add_option("--L", st_L, "Stochastic dimension")->capture_default_str();
  stats_cmd->add_option("--p-u", st_p, "PCE order")->capture_default_str();
  stats_cmd->add_option("--out", st_out, "CSV output (default: stdout)");
  stats_cmd->add_option("--vtk", st_vtk, "Legacy VTK export of mean and std");
  stats_cmd->add_option("--mesh", st_mesh, "Mesh file for --vtk");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : BadConfig;
  }

  try {
    if (*kle_cmd) return run_kle_report(kle_a, kle_b, kle_sigma2, kle_rows);
    if (*grid_cmd) return run_grid_report(grid_d, grid_l);
    if (*det_cmd) return run_solve_det(resolve(det_cfg, det_ov), det_coeff, det_xi);
    if (*int_cmd) return run_solve_intrusive(resolve(int_cfg, int_ov));
    if (*nisp_cmd) return run_solve_nisp(resolve(nisp_cfg, nisp_ov));
    if (*cmp_cmd) return run_compare(cmp_a, cmp_b, cmp_L, cmp_p, cmp_out);
    if (*stats_cmd) return run_stats(st_in, st_L, st_p, st_out, st_vtk, st_mesh);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (iterations " << e.iterations() << ", residual " << e.residual() << ")\n";
    return NoConvergence;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return BadIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return BadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return BadConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return BadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Failure;
  }
  return Failure;
}
