#pragma once

#include "ssfem/mesh.hpp"
#include "ssfem/sparse.hpp"

#include <array>
#include <span>
#include <vector>

/**
 * P1 finite elements for -div(c grad u) = F on a triangulated unit square
 * with u = 0 on the boundary.
 */
namespace ssfem::fem {

using ElementMatrix = std::array<std::array<double, 3>, 3>;

/// K[r][s] = coeff * |T| * grad(phi_r) . grad(phi_s). Throws
/// std::invalid_argument for a zero-area triangle.
ElementMatrix element_stiffness(const std::array<mesh::Point, 3>& vertices, double coeff);

/**
 * Assembly engine bound to one mesh. The sparsity pattern and the
 * unit-coefficient element matrices are computed once; every later
 * assembly only rescales and scatters values into the shared pattern.
 */
class Assembler {
public:
  explicit Assembler(const mesh::TriMesh& mesh);

  const mesh::TriMesh& mesh() const noexcept { return *mesh_; }
  std::size_t num_nodes() const noexcept { return mesh_->num_nodes(); }

  /// Matrix with the shared pattern and all values zero.
  CsrMatrix pattern() const;

  /// Stiffness for a nodal coefficient; each element uses the mean of its
  /// three vertex values. Throws std::invalid_argument on a length mismatch.
  CsrMatrix stiffness(std::span<const double> nodal_coeff) const;

  /// Overwrites `values` (pattern().nnz() long) with the stiffness values.
  void stiffness_values(std::span<const double> nodal_coeff, std::span<double> values) const;

private:
  const mesh::TriMesh* mesh_;
  std::size_t n_ = 0;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> columns_;
  std::vector<std::array<std::size_t, 9>> slots_; // value positions per triangle, row-major 3x3
  std::vector<ElementMatrix> unit_;               // coefficient-free element matrices
};

CsrMatrix assemble_stiffness(const mesh::TriMesh& mesh, std::span<const double> nodal_coeff);

/// Each triangle adds f |T| / 3 to its three vertices.
std::vector<double> assemble_load(const mesh::TriMesh& mesh, double f);

/// Nodal source f_n, integrated with the element-mean value.
std::vector<double> assemble_load(const mesh::TriMesh& mesh, std::span<const double> nodal_f);

/**
 * Symmetric elimination of homogeneous Dirichlet nodes: every entry in a
 * constrained row or column is zeroed (the pattern is kept), the diagonal
 * of constrained rows is set to `diagonal`, and constrained rhs entries are
 * zeroed. `rhs` may be empty.
 */
void apply_dirichlet(CsrMatrix& matrix, std::span<double> rhs, std::span<const std::size_t> boundary_nodes,
                     double diagonal = 1.0);

/// PCG (Jacobi) to relative residual `rel_tol`, capped at 10 N iterations.
/// Throws ConvergenceError when the cap is reached.
std::vector<double> solve_deterministic(const mesh::TriMesh& mesh, std::span<const double> nodal_coeff, double f,
                                        double rel_tol = 1e-10);

/// Solves an already constrained system; throws ConvergenceError on failure.
std::vector<double> solve_constrained(const CsrMatrix& matrix, std::span<const double> rhs, double rel_tol,
                                      CgResult* info = nullptr);

} // namespace ssfem::fem
