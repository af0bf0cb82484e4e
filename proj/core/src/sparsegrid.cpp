#include "ssfem/sparsegrid.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>

namespace ssfem::sparsegrid {

namespace {

constexpr double kMergeTolerance = 1e-12;
constexpr double kCancelTolerance = 1e-14;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Visit every multi-level (k_1..k_d), k_i >= 1, with lo <= |k| <= hi.
template <typename Fn>
void for_each_level(int dimension, int lo, int hi, Fn&& fn) {
  std::vector<int> k(static_cast<std::size_t>(dimension), 1);
  while (true) {
    int sum = 0;
    for (int v : k) sum += v;
    if (sum >= lo && sum <= hi) fn(k, sum);
    // odometer increment bounded by the total
    std::size_t pos = 0;
    while (pos < k.size()) {
      ++k[pos];
      int s = 0;
      for (int v : k) s += v;
      if (s <= hi) break;
      k[pos] = 1;
      ++pos;
    }
    if (pos == k.size()) return;
  }
}

} // namespace

Quadrature1D gauss_hermite(int level) {
  if (level < 1) throw std::invalid_argument("gauss_hermite: level must be >= 1");
  const auto n = static_cast<Eigen::Index>(level);
  Quadrature1D rule;
  rule.level = level;
  if (level == 1) {
    rule.nodes = {0.0};
    rule.weights = {1.0};
    return rule;
  }
  // x He_k = He_{k+1} + k He_{k-1}: zero diagonal, off-diagonal sqrt(k).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index k = 0; k < n - 1; ++k) sub[k] = std::sqrt(static_cast<double>(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_hermite: tridiagonal eigensolve failed");

  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  for (Eigen::Index q = 0; q < n; ++q) {
    x[static_cast<std::size_t>(q)] = solver.eigenvalues()[q];
    const double v0 = solver.eigenvectors()(0, q);
    w[static_cast<std::size_t>(q)] = v0 * v0;
  }
  // Enforce exact symmetry about the origin.
  const auto m = static_cast<std::size_t>(n);
  for (std::size_t q = 0; q < m / 2; ++q) {
    const double xs = 0.5 * (x[m - 1 - q] - x[q]);
    const double ws = 0.5 * (w[m - 1 - q] + w[q]);
    x[q] = -xs;
    x[m - 1 - q] = xs;
    w[q] = ws;
    w[m - 1 - q] = ws;
  }
  if (m % 2 == 1) x[m / 2] = 0.0;
  rule.nodes = std::move(x);
  rule.weights = std::move(w);
  return rule;
}

SparseGrid::SparseGrid(int dimension, int level, std::vector<double> points, std::vector<double> weights)
    : dimension_(dimension), level_(level), points_(std::move(points)), weights_(std::move(weights)) {
  if (dimension < 1) throw std::invalid_argument("SparseGrid: dimension must be >= 1");
  if (points_.size() != weights_.size() * static_cast<std::size_t>(dimension))
    throw std::invalid_argument("SparseGrid: point array does not match weight count");
}

SparseGrid smolyak(int dimension, int level) {
  if (dimension < 1) throw std::invalid_argument("smolyak: dimension must be >= 1");
  if (level < 1) throw std::invalid_argument("smolyak: level must be >= 1");

  const int top = level + dimension - 1;
  const int max_1d = level; // largest 1D level appearing in any retained multi-level

  std::vector<Quadrature1D> rules;
  for (int l = 1; l <= max_1d; ++l) rules.push_back(gauss_hermite(l));

  // Canonical 1D node ids: cluster nodes from all levels within the merge tolerance.
  std::vector<double> canonical;
  for (const auto& r : rules) canonical.insert(canonical.end(), r.nodes.begin(), r.nodes.end());
  std::sort(canonical.begin(), canonical.end());
  std::vector<double> unique;
  for (double v : canonical)
    if (unique.empty() || v - unique.back() > kMergeTolerance) unique.push_back(v);
  auto id_of = [&](double v) {
    auto it = std::lower_bound(unique.begin(), unique.end(), v - kMergeTolerance);
    return static_cast<int>(it - unique.begin());
  };
  std::vector<std::vector<int>> ids(rules.size());
  for (std::size_t r = 0; r < rules.size(); ++r)
    for (double v : rules[r].nodes) ids[r].push_back(id_of(v));

  std::map<std::vector<int>, double> merged;
  for_each_level(dimension, level, top, [&](const std::vector<int>& k, int sum) {
    const int gap = top - sum;
    const double coef = ((gap % 2 == 0) ? 1.0 : -1.0) * binomial(dimension - 1, gap);
    if (coef == 0.0) return;
    // tensor product of the 1D rules for this multi-level
    std::vector<std::size_t> pos(k.size(), 0);
    std::vector<int> key(k.size());
    while (true) {
      double w = coef;
      for (std::size_t d = 0; d < k.size(); ++d) {
        const auto& r = rules[static_cast<std::size_t>(k[d] - 1)];
        w *= r.weights[pos[d]];
        key[d] = ids[static_cast<std::size_t>(k[d] - 1)][pos[d]];
      }
      merged[key] += w;
      std::size_t d = 0;
      while (d < k.size()) {
        if (++pos[d] < static_cast<std::size_t>(k[d])) break;
        pos[d] = 0;
        ++d;
      }
      if (d == k.size()) break;
    }
  });

  std::vector<double> points;
  std::vector<double> weights;
  for (const auto& [key, w] : merged) {
    if (std::abs(w) <= kCancelTolerance) continue;
    for (int id : key) points.push_back(unique[static_cast<std::size_t>(id)]);
    weights.push_back(w);
  }
  return SparseGrid(dimension, level, std::move(points), std::move(weights));
}

void write_grid_table(std::ostream& out, const SparseGrid& grid) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::fixed << std::setprecision(4);
  for (std::size_t q = 0; q < grid.size(); ++q) {
    out << "{ ";
    const auto p = grid.point(q);
    for (std::size_t d = 0; d < p.size(); ++d) out << std::setw(7) << p[d] << (d + 1 < p.size() ? ", " : " ");
    out << "}  " << std::setw(7) << grid.weight(q) << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

} // namespace ssfem::sparsegrid
