#pragma once

#include "ssfem/field.hpp"
#include "ssfem/mesh.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ssfem::postproc {

struct FieldStats {
  std::vector<double> mean;
  std::vector<double> std_dev;
};

/// mean = c_0, std = sqrt(sum_{j>=1} c_j^2 <Psi_j^2>) per node.
FieldStats field_stats(const StochasticField& field);

/// ||a - b||_2 / ||a||_2, or ||a - b||_2 when ||a||_2 == 0.
double relative_l2(std::span<const double> a, std::span<const double> b);

struct CompareReport {
  std::size_t num_nodes = 0;
  std::size_t num_terms = 0;
  std::vector<double> coeff_rel_l2; // per basis term, relative to the first field
  double mean_rel_l2 = 0.0;
  double std_rel_l2 = 0.0;
  double max_abs_diff = 0.0;

  /// Machine-readable JSON object.
  std::string to_json() const;
};

/// Requires identical node counts and identical basis term sequences;
/// throws std::invalid_argument otherwise.
CompareReport compare_fields(const StochasticField& a, const StochasticField& b);

struct NamedField {
  std::string name;
  std::span<const double> values;
};

/// Legacy VTK ASCII UNSTRUCTURED_GRID: triangles as cell type 5 and one
/// POINT_DATA SCALARS block per field, in the given order. Throws
/// std::invalid_argument when a field length differs from the node count.
void export_vtk(std::ostream& out, const mesh::TriMesh& mesh, std::span<const NamedField> fields,
                const std::string& title = "ssfem");
void export_vtk(const std::string& path, const mesh::TriMesh& mesh, std::span<const NamedField> fields,
                const std::string& title = "ssfem");

/// Mean, std and the requested coefficient rows of a solution as VTK.
void export_solution_vtk(const std::string& path, const mesh::TriMesh& mesh, const StochasticField& field,
                         std::span<const std::size_t> coefficient_rows);

} // namespace ssfem::postproc
