#pragma once

#include "ssfem/field.hpp"
#include "ssfem/kle.hpp"
#include "ssfem/mesh.hpp"
#include "ssfem/pce.hpp"
#include "ssfem/sparsegrid.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace ssfem::nisp {

/// Number of deterministic solves a NISP run needs (deduplicated grid nodes).
std::size_t sample_count(const sparsegrid::SparseGrid& grid);

/// Fills `u` (length N) with the response at germ point `xi`.
using Response = std::function<void(std::span<const double> xi, std::span<double> u)>;

/**
 * Spectral projection
 *
 *     u_k = sum_q w_q u(xi_q) Psi_k(xi_q) / <Psi_k^2>
 *
 * with the analytic denominators. Grid points are visited in stored
 * (lexicographic) order, which fixes the summation order.
 */
StochasticField project(const Response& response, std::size_t num_nodes, std::shared_ptr<const pce::PceBasis> basis,
                        const sparsegrid::SparseGrid& grid);

struct NispOptions {
  double rel_tol = 1e-10;
};

/**
 * For each grid point: the exact lognormal coefficient exp(g_0 + sum g_d xi_d)
 * at the nodes, assembly on the shared pattern, Dirichlet elimination and a
 * PCG solve; then projection onto `basis_u`. A failed sample solve aborts
 * with a ConvergenceError naming the grid point.
 */
StochasticField nisp_solve(const mesh::TriMesh& mesh, const kle::GaussianModes& modes,
                           std::shared_ptr<const pce::PceBasis> basis_u, const sparsegrid::SparseGrid& grid, double f,
                           const NispOptions& options = {});

/// Deterministic solve of one lognormal realization (shared by NISP and MC checks).
class SampleSolver {
public:
  SampleSolver(const mesh::TriMesh& mesh, const kle::GaussianModes& modes, double f, double rel_tol = 1e-10);

  /// Throws ConvergenceError when CG fails.
  void solve(std::span<const double> xi, std::span<double> u) const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

} // namespace ssfem::nisp
