#include "ssfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ssfem {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

} // namespace

CsrMatrix::CsrMatrix(std::size_t n, std::vector<std::size_t> row_offsets, std::vector<std::size_t> columns,
                     std::vector<double> values)
    : n_(n), row_offsets_(std::move(row_offsets)), columns_(std::move(columns)), values_(std::move(values)) {
  if (row_offsets_.size() != n_ + 1 || row_offsets_.front() != 0 || row_offsets_.back() != columns_.size() ||
      values_.size() != columns_.size())
    throw std::invalid_argument("CsrMatrix: inconsistent array sizes");
  for (std::size_t r = 0; r < n_; ++r) {
    if (row_offsets_[r] > row_offsets_[r + 1]) throw std::invalid_argument("CsrMatrix: decreasing row offsets");
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      if (columns_[p] >= n_) throw std::invalid_argument("CsrMatrix: column index out of range");
      if (p > row_offsets_[r] && columns_[p] <= columns_[p - 1])
        throw std::invalid_argument("CsrMatrix: columns must be strictly increasing within a row");
    }
  }
}

std::size_t CsrMatrix::find(std::size_t row, std::size_t col) const {
  if (row >= n_) return npos;
  const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
  const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return npos;
  return static_cast<std::size_t>(it - columns_.begin());
}

double CsrMatrix::at(std::size_t row, std::size_t col) const {
  const auto p = find(row, col);
  return p == npos ? 0.0 : values_[p];
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(n_, 0.0);
  for (std::size_t r = 0; r < n_; ++r) d[r] = at(r, r);
  return d;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  multiply_add(x, y, 1.0);
}

void CsrMatrix::multiply_add(std::span<const double> x, std::span<double> y, double alpha) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("CsrMatrix::multiply: vector size mismatch");
  for (std::size_t r = 0; r < n_; ++r) {
    double s = 0.0;
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) s += values_[p] * x[columns_[p]];
    y[r] += alpha * s;
  }
}

double CsrMatrix::symmetry_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      const auto q = find(columns_[p], r);
      const double other = q == npos ? 0.0 : values_[q];
      worst = std::max(worst, std::abs(values_[p] - other));
    }
  return worst;
}

CgResult conjugate_gradient(const LinearOperator& apply, std::span<const double> inv_diagonal,
                            std::span<const double> rhs, std::span<double> x, const CgOptions& options) {
  const std::size_t n = rhs.size();
  if (x.size() != n || inv_diagonal.size() != n) throw std::invalid_argument("conjugate_gradient: size mismatch");
  const std::size_t cap = options.max_iterations ? options.max_iterations : 10 * std::max<std::size_t>(n, 1);

  CgResult result;
  const double bnorm = std::sqrt(dot(rhs, rhs));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    result.converged = true;
    return result;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  apply(x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
  double rnorm = std::sqrt(dot(r, r));
  result.rel_residual = rnorm / bnorm;
  if (result.rel_residual <= options.rel_tol) {
    result.converged = true;
    return result;
  }
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diagonal[i] * r[i];
  p = z;
  double rz = dot(r, z);

  while (result.iterations < cap) {
    apply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) break; // operator not positive definite along p
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    ++result.iterations;
    rnorm = std::sqrt(dot(r, r));
    result.rel_residual = rnorm / bnorm;
    if (result.rel_residual <= options.rel_tol) {
      result.converged = true;
      return result;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diagonal[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return result;
}

} // namespace ssfem
