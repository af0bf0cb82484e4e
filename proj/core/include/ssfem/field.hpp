#pragma once

#include "ssfem/mesh.hpp"
#include "ssfem/pce.hpp"

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ssfem {

enum class FieldRole { InputCoefficient, Solution };

/**
 * Node-indexed PCE coefficients {c_j(x)} of a random field. Coefficients are
 * stored row-major, one row per basis term, one column per node.
 */
class StochasticField {
public:
  StochasticField(std::shared_ptr<const pce::PceBasis> basis, std::size_t num_nodes, FieldRole role);
  StochasticField(std::shared_ptr<const pce::PceBasis> basis, std::size_t num_nodes, FieldRole role,
                  std::vector<double> coeffs);

  const pce::PceBasis& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const pce::PceBasis>& basis_ptr() const noexcept { return basis_; }
  FieldRole role() const noexcept { return role_; }
  std::size_t num_terms() const noexcept { return basis_->size(); }
  std::size_t num_nodes() const noexcept { return num_nodes_; }

  std::span<const double> row(std::size_t j) const { return {coeffs_.data() + j * num_nodes_, num_nodes_}; }
  std::span<double> row(std::size_t j) { return {coeffs_.data() + j * num_nodes_, num_nodes_}; }
  double operator()(std::size_t j, std::size_t node) const { return coeffs_[j * num_nodes_ + node]; }
  double& operator()(std::size_t j, std::size_t node) { return coeffs_[j * num_nodes_ + node]; }

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  /// sum_j c_j(x) Psi_j(xi) at every node.
  std::vector<double> evaluate(std::span<const double> xi) const;

  /// Throws std::invalid_argument on non-finite entries, or on a non-positive
  /// mean row for input-coefficient fields.
  void validate() const;

private:
  std::shared_ptr<const pce::PceBasis> basis_;
  std::size_t num_nodes_;
  FieldRole role_;
  std::vector<double> coeffs_;
};

/// CSV with header "node,x,y,c0,...,cP", 15 significant digits.
void write_field_csv(std::ostream& out, const std::vector<mesh::Point>& nodes, const StochasticField& field);
void write_field_csv(const std::string& path, const std::vector<mesh::Point>& nodes, const StochasticField& field);

/// Plain nodal vector in the same schema with a single c0 column.
void write_nodal_csv(const std::string& path, const std::vector<mesh::Point>& nodes, std::span<const double> values);

struct FieldCsv {
  std::vector<mesh::Point> nodes;
  std::size_t num_terms = 0;
  std::vector<double> coeffs; // row-major, num_terms x nodes
};

/// Parses the CSV schema above; rows must be numbered 0..N-1 in order.
FieldCsv read_field_csv(std::istream& in);
FieldCsv read_field_csv(const std::string& path);

/// Reads a field and attaches `basis`; throws IoError when the column count
/// does not match basis->size().
StochasticField load_field_csv(const std::string& path, std::shared_ptr<const pce::PceBasis> basis, FieldRole role);

} // namespace ssfem
