#include "ssfem/postproc.hpp"

#include "ssfem/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ssfem::postproc {

FieldStats field_stats(const StochasticField& field) {
  const std::size_t n = field.num_nodes();
  FieldStats s;
  s.mean.assign(field.row(0).begin(), field.row(0).end());
  s.std_dev.assign(n, 0.0);
  for (std::size_t j = 1; j < field.num_terms(); ++j) {
    const double var = field.basis().variance(j);
    const auto r = field.row(j);
    for (std::size_t i = 0; i < n; ++i) s.std_dev[i] += r[i] * r[i] * var;
  }
  for (auto& v : s.std_dev) v = std::sqrt(v);
  return s;
}

double relative_l2(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_l2: length mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += a[i] * a[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

CompareReport compare_fields(const StochasticField& a, const StochasticField& b) {
  if (a.num_nodes() != b.num_nodes())
    throw std::invalid_argument("compare_fields: node counts differ (" + std::to_string(a.num_nodes()) + " vs " +
                                std::to_string(b.num_nodes()) + ")");
  if (a.num_terms() != b.num_terms())
    throw std::invalid_argument("compare_fields: term counts differ (" + std::to_string(a.num_terms()) + " vs " +
                                std::to_string(b.num_terms()) + ")");
  if (a.basis().terms() != b.basis().terms())
    throw std::invalid_argument("compare_fields: bases order their terms differently");

  CompareReport r;
  r.num_nodes = a.num_nodes();
  r.num_terms = a.num_terms();
  for (std::size_t j = 0; j < a.num_terms(); ++j) r.coeff_rel_l2.push_back(relative_l2(a.row(j), b.row(j)));
  const auto sa = field_stats(a);
  const auto sb = field_stats(b);
  r.mean_rel_l2 = relative_l2(sa.mean, sb.mean);
  r.std_rel_l2 = relative_l2(sa.std_dev, sb.std_dev);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    r.max_abs_diff = std::max(r.max_abs_diff, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return r;
}

std::string CompareReport::to_json() const {
  nlohmann::json j;
  j["num_nodes"] = num_nodes;
  j["num_terms"] = num_terms;
  j["coeff_rel_l2"] = coeff_rel_l2;
  j["mean_rel_l2"] = mean_rel_l2;
  j["std_rel_l2"] = std_rel_l2;
  j["max_abs_diff"] = max_abs_diff;
  return j.dump(2);
}

void export_vtk(std::ostream& out, const mesh::TriMesh& mesh, std::span<const NamedField> fields, const std::string& title) {
  for (const auto& f : fields)
    if (f.values.size() != mesh.num_nodes())
      throw std::invalid_argument("export_vtk: field '" + f.name + "' has " + std::to_string(f.values.size()) +
                                  " values for " + std::to_string(mesh.num_nodes()) + " nodes");
  const auto prec = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_nodes() << " double\n";
  for (const auto& p : mesh.nodes) out << p[0] << ' ' << p[1] << " 0\n";
  out << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.num_triangles() << '\n';
  for (std::size_t e = 0; e < mesh.num_triangles(); ++e) out << "5\n";
  if (!fields.empty()) {
    out << "POINT_DATA " << mesh.num_nodes() << '\n';
    for (const auto& f : fields) {
      out << "SCALARS " << f.name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : f.values) out << v << '\n';
    }
  }
  out.precision(prec);
}

void export_vtk(const std::string& path, const mesh::TriMesh& mesh, std::span<const NamedField> fields,
                const std::string& title) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  export_vtk(out, mesh, fields, title);
  if (!out) throw IoError("failed writing '" + path + "'");
}

void export_solution_vtk(const std::string& path, const mesh::TriMesh& mesh, const StochasticField& field,
                         std::span<const std::size_t> coefficient_rows) {
  const auto stats = field_stats(field);
  std::vector<NamedField> named{{"mean", stats.mean}, {"std", stats.std_dev}};
  for (auto j : coefficient_rows) {
    if (j >= field.num_terms()) continue;
    named.push_back({"u" + std::to_string(j), field.row(j)});
  }
  export_vtk(path, mesh, named);
}

} // namespace ssfem::postproc
