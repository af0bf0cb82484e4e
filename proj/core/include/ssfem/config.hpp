#pragma once

#include "ssfem/kle.hpp"
#include "ssfem/mesh.hpp"

#include <iosfwd>
#include <string>

namespace ssfem {

/// Run parameters shared by the solve subcommands. Values come from a flat
/// key=value file and may be overridden on the command line.
struct RunConfig {
  std::string mesh;      // mesh file; empty selects structured nx x ny
  int nx = 24;
  int ny = 24;
  int L = 3;             // stochastic dimension (KL modes)
  int p_u = 3;           // solution PCE order
  int p_A = -1;          // input PCE order; negative means 2 * p_u
  double sigma = 0.3;    // standard deviation of the Gaussian field
  double corr_length = 1.0;
  double a = 0.5;        // kernel half-width
  double g0 = 0.0;       // mean of the Gaussian field
  double f = 1.0;        // source term
  double tol = 1e-8;     // intrusive CG relative residual
  double det_tol = 1e-10; // per-sample CG relative residual
  int level = 3;         // sparse-grid level
  std::string out;
  std::string vtk;
  std::string cijk_out;

  int input_order() const noexcept { return p_A < 0 ? 2 * p_u : p_A; }

  /// Assigns one key; throws ConfigError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  /// Throws ConfigError when a parameter is out of range.
  void validate() const;
};

/// Reads "key = value" lines ('#' comments, blank lines ignored) into `config`.
void read_config(std::istream& in, RunConfig& config);
void load_config(const std::string& path, RunConfig& config);

/// Mesh, KL expansion and nodal Gaussian modes for a configuration.
struct Problem {
  mesh::TriMesh mesh;
  kle::KlExpansion2D expansion;
  kle::GaussianModes modes;
};

Problem build_problem(const RunConfig& config);

} // namespace ssfem
