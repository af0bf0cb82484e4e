#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ssfem {

/// Square compressed-sparse-row matrix. Columns are sorted within each row
/// and free of duplicates.
class CsrMatrix {
public:
  CsrMatrix() = default;
  CsrMatrix(std::size_t n, std::vector<std::size_t> row_offsets, std::vector<std::size_t> columns,
            std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return columns_.size(); }

  const std::vector<std::size_t>& row_offsets() const noexcept { return row_offsets_; }
  const std::vector<std::size_t>& columns() const noexcept { return columns_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  /// Position of (row, col) in values(), or npos when not in the pattern.
  std::size_t find(std::size_t row, std::size_t col) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Entry value; zero outside the pattern.
  double at(std::size_t row, std::size_t col) const;

  std::vector<double> diagonal() const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// y += alpha A x
  void multiply_add(std::span<const double> x, std::span<double> y, double alpha = 1.0) const;

  bool same_pattern(const CsrMatrix& other) const noexcept {
    return n_ == other.n_ && row_offsets_ == other.row_offsets_ && columns_ == other.columns_;
  }

  /// max |A_ij - A_ji| over the pattern.
  double symmetry_defect() const;

private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> columns_;
  std::vector<double> values_;
};

struct CgOptions {
  double rel_tol = 1e-10;
  std::size_t max_iterations = 0; // 0 = 10 * n
};

struct CgResult {
  std::size_t iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

/**
 * Jacobi-preconditioned conjugate gradients for an SPD operator. `x` holds
 * the initial guess on entry. Convergence is ||b - A x|| <= rel_tol ||b||
 * measured on the recursively updated residual; b = 0 returns x = 0.
 */
CgResult conjugate_gradient(const LinearOperator& apply, std::span<const double> inv_diagonal,
                            std::span<const double> rhs, std::span<double> x, const CgOptions& options);

} // namespace ssfem
