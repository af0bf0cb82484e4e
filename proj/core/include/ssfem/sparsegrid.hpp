#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace ssfem::sparsegrid {

/// Gauss-Hermite rule for the standard normal density. A level-l rule has
/// exactly l nodes (linear growth) and integrates polynomials of degree
/// <= 2l-1 exactly.
struct Quadrature1D {
  int level = 0;
  std::vector<double> nodes;   // ascending, symmetric about 0
  std::vector<double> weights; // sum to 1
};

/// Golub-Welsch on the probabilists' Hermite Jacobi matrix. Throws
/// std::invalid_argument for level < 1.
Quadrature1D gauss_hermite(int level);

/**
 * Smolyak sparse grid built by the combination technique:
 *
 *     Q = sum_{l <= |k| <= l+d-1} (-1)^(l+d-1-|k|) C(d-1, l+d-1-|k|) Q_k1 x ... x Q_kd
 *
 * Coincident nodes (within 1e-12 per coordinate) are merged by summing their
 * signed weights; nodes whose merged weight cancels are dropped.
 */
class SparseGrid {
public:
  SparseGrid(int dimension, int level, std::vector<double> points, std::vector<double> weights);

  int dimension() const noexcept { return dimension_; }
  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return weights_.size(); }

  std::span<const double> point(std::size_t q) const {
    return {points_.data() + q * static_cast<std::size_t>(dimension_), static_cast<std::size_t>(dimension_)};
  }
  double weight(std::size_t q) const { return weights_.at(q); }
  const std::vector<double>& weights() const noexcept { return weights_; }

private:
  int dimension_;
  int level_;
  std::vector<double> points_; // row-major, size() x dimension()
  std::vector<double> weights_;
};

/// Points come out sorted lexicographically. Throws std::invalid_argument for
/// dimension < 1 or level < 1.
SparseGrid smolyak(int dimension, int level);

/// Node/weight table, one "{ x1, x2, ... } weight" row per point.
void write_grid_table(std::ostream& out, const SparseGrid& grid);

} // namespace ssfem::sparsegrid
