#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

/**
 * Analytic Karhunen-Loeve expansion of the separable exponential kernel
 *
 *     C(x1, y1; x2, y2) = sigma2 * exp(-|x2 - x1| / b - |y2 - y1| / b)
 *
 * on the square [-a, a]^2.
 */
namespace ssfem::kle {

using Point = std::array<double, 2>;

enum class Parity { Odd, Even };

/// One eigenpair of the 1D kernel exp(-|x - y| / b) scaled by a variance.
/// Odd (1-based) indices carry cos(omega z) / norm, even ones sin(omega z) / norm.
struct Eigenpair1D {
  double omega = 0.0;
  double lambda = 0.0;
  Parity parity = Parity::Odd;
  double norm = 1.0;
};

/// The n smallest positive roots, alternating between
///   1/b - w tan(w a) = 0   (odd indices)   and
///   w + tan(w a) / b = 0   (even indices),
/// each bracketed between consecutive asymptotes of tan(w a) and bisected to
/// |dw| < 1e-12. Throws std::invalid_argument for bad inputs and
/// std::runtime_error naming the interval when a bracket has no sign change.
std::vector<double> solve_omegas(double a, double b, int n);

/// Residual of the branch equation that `omega` (1-based `index`) solves.
double omega_residual(double a, double b, int index, double omega);

/// lambda_i = sigma2 * 2b / (1 + b^2 w_i^2), strictly decreasing in i.
std::vector<Eigenpair1D> eigen_1d(double a, double b, double sigma2, int n);

/// Unit-L2 eigenfunction on [-a, a].
double eigenfunction_1d(const Eigenpair1D& pair, double z);

struct Pair2D {
  double lambda = 0.0;
  int ix = 1; // 1-based index into the 1D list along x
  int iy = 1; // 1-based index along y
};

/**
 * Sorted tensor-product eigenpairs. `pairs_1d` are computed with unit
 * variance, so lambda_2d = sigma2 * lambda1d[ix] * lambda1d[iy].
 */
struct KlExpansion2D {
  double a = 0.5;
  double b = 1.0;
  double sigma2 = 1.0;
  std::vector<Eigenpair1D> pairs_1d;
  std::vector<Pair2D> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  std::vector<double> lambdas() const;
};

/// First n_terms products in descending order, ties broken by (ix, iy).
/// The 1D candidate set grows until no product outside it can enter the top n_terms.
KlExpansion2D eigen_2d(double a, double b, double sigma2, int n_terms);

/// f_k(x, y) = g_ix(x) h_iy(y) for 1-based k. Throws std::out_of_range for
/// bad k or a point outside [-a, a]^2.
double eigenfunction_2d(const KlExpansion2D& expansion, int k, const Point& x);

/// sum_{i<=k} lambda_i / sum_{i<=n} lambda_i with 1 <= k <= n <= size.
double partial_sum_ratio(std::span<const double> lambdas, int k, int n);

/// Node-wise Gaussian modes of the truncated field g = g_0 + sum_j g_j xi_j,
/// row 0 is the constant mean g_0 and row j (1..L) is sqrt(lambda_j) f_j(x).
/// Stored row-major, (L + 1) x num_nodes.
struct GaussianModes {
  int dimension = 0; // L
  std::size_t num_nodes = 0;
  std::vector<double> values;

  std::span<const double> mode(std::size_t j) const { return {values.data() + j * num_nodes, num_nodes}; }
  std::span<double> mode(std::size_t j) { return {values.data() + j * num_nodes, num_nodes}; }
};

/**
 * Modes at mesh nodes in the unit square. Node coordinates are shifted by
 * (-0.5, -0.5) onto the kernel's square before evaluation, so a must be at
 * least 0.5. Throws std::invalid_argument when L exceeds the expansion and
 * std::out_of_range when a shifted node leaves [-a, a]^2.
 */
GaussianModes gaussian_modes(const KlExpansion2D& expansion, std::span<const Point> nodes, double g0, int L);

/// Text report: 1D table (index, omega, lambda) and 2D table (n, ix, iy, lambda), 4 decimals.
void write_report(std::ostream& out, const KlExpansion2D& expansion, int rows);

} // namespace ssfem::kle
