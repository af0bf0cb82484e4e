#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

/**
 * Hermite polynomial chaos machinery.
 *
 * The germ is a vector of L independent standard normal variables and the
 * basis consists of products of probabilists' Hermite polynomials,
 *
 *     Psi_j(xi) = prod_d He_{m_d}(xi_d),
 *
 * orthogonal under the normalized Gaussian measure (so <Psi_0^2> = 1 and
 * <Psi_j^2> = prod_d m_d!).
 */
namespace ssfem::pce {

/// Per-dimension polynomial orders of one basis term.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& index);

/**
 * Graded polynomial chaos basis of dimension L and total order p.
 *
 * Terms are grouped by ascending total degree. Inside a degree block the
 * pure powers (one active dimension, ordered by dimension) are interleaved
 * with the mixed terms (two or more active dimensions, in descending
 * lexicographic order): pure, mixed, pure, mixed, ... and whichever list is
 * longer supplies the tail. For L=3, p=2 this yields
 *
 *     1, x1, x2, x3, x1^2-1, x1x2, x2^2-1, x1x3, x3^2-1, x2x3.
 *
 * Coefficient files are position-indexed, so this order is part of the file
 * contract.
 */
class PceBasis {
public:
  PceBasis(int dimension, int order);

  /// Basis over an explicit term list (e.g. imported or reordered). Checks
  /// each index has the right length and total degree <= order.
  PceBasis(int dimension, int order, std::vector<MultiIndex> terms);

  int dimension() const noexcept { return dimension_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return terms_.size(); }

  const MultiIndex& term(std::size_t j) const;
  const std::vector<MultiIndex>& terms() const noexcept { return terms_; }

  /// <Psi_j^2> = prod_d (m_d)!
  double variance(std::size_t j) const;
  const std::vector<double>& variances() const noexcept { return variances_; }

  /// Psi_j(xi). Throws std::out_of_range for a bad j and
  /// std::invalid_argument when xi.size() != dimension().
  double eval(std::size_t j, std::span<const double> xi) const;

  /// All Psi_j(xi) at once, sharing the 1D recurrences.
  std::vector<double> eval_all(std::span<const double> xi) const;

  bool operator==(const PceBasis& other) const noexcept {
    return dimension_ == other.dimension_ && order_ == other.order_ && terms_ == other.terms_;
  }

private:
  int dimension_;
  int order_;
  std::vector<MultiIndex> terms_;
  std::vector<double> variances_;
};

/// (L+p)! / (L! p!), the number of terms of an order-p basis in L dimensions.
std::size_t term_count(int dimension, int order);

PceBasis build_basis(int dimension, int order);

/// Probabilists' Hermite polynomial He_n(x) by three-term recurrence.
double hermite_1d(int n, double x);

double eval_psi(const PceBasis& basis, std::size_t j, std::span<const double> xi);
double psi_variance(const PceBasis& basis, std::size_t j);

/// <He_a He_b He_c> under the standard normal density, by Gauss-Hermite
/// quadrature with ceil((a+b+c)/2)+1 points.
double triple_moment_1d(int a, int b, int c);

struct CijkEntry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  double value;
};

/**
 * Sparse third-order moment tensor C_ijk = <Psi_i Psi_j Psi_k>, with i
 * ranging over an input basis and j, k over an output basis.
 *
 * Entries are stored sorted lexicographically by (i, j, k); only values with
 * magnitude above drop_tolerance are kept.
 */
class CijkTensor {
public:
  static constexpr double drop_tolerance = 1e-12;

  CijkTensor(std::size_t in_size, std::size_t out_size, std::vector<CijkEntry> entries);

  std::size_t in_size() const noexcept { return in_size_; }
  std::size_t out_size() const noexcept { return out_size_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  const std::vector<CijkEntry>& entries() const noexcept { return entries_; }

  /// Value at (i, j, k); zero when the entry is not stored.
  double operator()(std::size_t i, std::size_t j, std::size_t k) const;

private:
  std::size_t in_size_;
  std::size_t out_size_;
  std::vector<CijkEntry> entries_;
};

/// Factorized tensor: each entry is a product of 1D triple moments.
/// Throws std::invalid_argument when the bases have different dimensions.
CijkTensor build_cijk(const PceBasis& basis_in, const PceBasis& basis_out);

/// Debug export: "i j k value" per line, lexicographic, 15 significant digits.
void write_cijk(std::ostream& out, const CijkTensor& cijk);
void write_cijk(const std::string& path, const CijkTensor& cijk);

} // namespace ssfem::pce
