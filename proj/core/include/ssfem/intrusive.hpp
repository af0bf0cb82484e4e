#pragma once

#include "ssfem/fem.hpp"
#include "ssfem/field.hpp"
#include "ssfem/mesh.hpp"
#include "ssfem/pce.hpp"
#include "ssfem/sparse.hpp"

#include <memory>
#include <span>
#include <vector>

namespace ssfem::intrusive {

/**
 * Matrix-free stochastic Galerkin operator
 *
 *     y_k = sum_j sum_i C_ijk A_i x_j,   k = 0..P_u,
 *
 * over block vectors of P_u+1 blocks of N entries each. Only stored C_ijk
 * entries are visited. When a constrained-node mask is set, the mode
 * matrices are expected to have those rows and columns zeroed and the
 * operator adds the identity on constrained entries of every block.
 */
class BlockOperator {
public:
  BlockOperator(std::vector<CsrMatrix> modes, std::shared_ptr<const pce::CijkTensor> cijk, std::size_t blocks,
                std::vector<unsigned char> constrained = {});

  std::size_t block_size() const noexcept { return n_; }
  std::size_t blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return n_ * blocks_; }
  const std::vector<CsrMatrix>& modes() const noexcept { return modes_; }
  const pce::CijkTensor& cijk() const noexcept { return *cijk_; }
  const std::vector<unsigned char>& constrained() const noexcept { return constrained_; }

  /// Stored (i, j, k) triples used by apply(), ordered by k then j.
  const std::vector<pce::CijkEntry>& active_entries() const noexcept { return active_; }

  void apply(std::span<const double> x, std::span<double> y) const;

  /// Mean-based block-Jacobi: C_0kk diag(A_0) on block k, 1 on constrained entries.
  std::vector<double> preconditioner_diagonal() const;

private:
  std::vector<CsrMatrix> modes_;
  std::shared_ptr<const pce::CijkTensor> cijk_;
  std::size_t blocks_;
  std::size_t n_;
  std::vector<unsigned char> constrained_;
  std::vector<pce::CijkEntry> active_;
};

/// One deterministic assembly per input PCE term: A_i = K(l_i).
std::vector<CsrMatrix> assemble_mode_matrices(const mesh::TriMesh& mesh, const StochasticField& l_field);

/// y = op(x). Throws std::invalid_argument on a size mismatch.
std::vector<double> block_apply(const BlockOperator& op, std::span<const double> x);

/// Block 0 is the deterministic load; blocks 1..P_u are zero.
std::vector<double> stochastic_rhs(std::span<const double> load, const pce::PceBasis& basis_u);

/// Global CSR of the block system with blocks A_jk = sum_i C_ijk A_i
/// assembled explicitly. Intended for small debugging problems.
CsrMatrix assemble_explicit(const BlockOperator& op);

struct IntrusiveOptions {
  double rel_tol = 1e-8;
  std::size_t max_iterations = 0; // 0 = 10 * total dimension
};

struct IntrusiveSolution {
  StochasticField field;
  CgResult cg;
  std::size_t cijk_nnz = 0;
};

/**
 * Solves the coupled Galerkin system for all output coefficients at once.
 * Homogeneous Dirichlet conditions are applied to every mode matrix and every
 * rhs block. Throws ConvergenceError with iteration count and residual when
 * CG stalls.
 */
IntrusiveSolution solve_intrusive(const mesh::TriMesh& mesh, const StochasticField& l_field, double f,
                                  std::shared_ptr<const pce::PceBasis> basis_u, const IntrusiveOptions& options = {});

} // namespace ssfem::intrusive
