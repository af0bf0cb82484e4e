#include "ssfem/fem.hpp"

#include "ssfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ssfem::fem {

ElementMatrix element_stiffness(const std::array<mesh::Point, 3>& v, double coeff) {
  const double area = mesh::signed_area(v[0], v[1], v[2]);
  if (area == 0.0) throw std::invalid_argument("element_stiffness: degenerate triangle");
  // grad(phi_r) = (y_s - y_t, x_t - x_s) / (2 A) for (r, s, t) cyclic
  std::array<std::array<double, 2>, 3> grad{};
  for (std::size_t r = 0; r < 3; ++r) {
    const auto& ps = v[(r + 1) % 3];
    const auto& pt = v[(r + 2) % 3];
    grad[r] = {(ps[1] - pt[1]) / (2.0 * area), (pt[0] - ps[0]) / (2.0 * area)};
  }
  const double scale = coeff * std::abs(area);
  ElementMatrix k{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t s = 0; s < 3; ++s) k[r][s] = scale * (grad[r][0] * grad[s][0] + grad[r][1] * grad[s][1]);
  return k;
}

Assembler::Assembler(const mesh::TriMesh& mesh) : mesh_(&mesh), n_(mesh.num_nodes()) {
  std::vector<std::vector<std::size_t>> adjacency(n_);
  for (std::size_t r = 0; r < n_; ++r) adjacency[r].push_back(r);
  for (const auto& t : mesh.triangles)
    for (auto r : t)
      for (auto c : t) adjacency[r].push_back(c);
  row_offsets_.assign(n_ + 1, 0);
  for (std::size_t r = 0; r < n_; ++r) {
    auto& row = adjacency[r];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    row_offsets_[r + 1] = row_offsets_[r] + row.size();
  }
  columns_.reserve(row_offsets_.back());
  for (const auto& row : adjacency) columns_.insert(columns_.end(), row.begin(), row.end());

  auto locate = [&](std::size_t r, std::size_t c) {
    const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[r]);
    const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[r + 1]);
    return static_cast<std::size_t>(std::lower_bound(first, last, c) - columns_.begin());
  };
  slots_.reserve(mesh.num_triangles());
  unit_.reserve(mesh.num_triangles());
  for (const auto& t : mesh.triangles) {
    std::array<std::size_t, 9> s{};
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) s[a * 3 + b] = locate(t[a], t[b]);
    slots_.push_back(s);
    unit_.push_back(element_stiffness({mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]}, 1.0));
  }
}

CsrMatrix Assembler::pattern() const {
  return CsrMatrix(n_, row_offsets_, columns_, std::vector<double>(columns_.size(), 0.0));
}

void Assembler::stiffness_values(std::span<const double> nodal_coeff, std::span<double> values) const {
  if (nodal_coeff.size() != n_)
    throw std::invalid_argument("assemble_stiffness: coefficient vector length differs from node count");
  if (values.size() != columns_.size()) throw std::invalid_argument("assemble_stiffness: value array size mismatch");
  std::fill(values.begin(), values.end(), 0.0);
  const auto& tris = mesh_->triangles;
  for (std::size_t e = 0; e < tris.size(); ++e) {
    const auto& t = tris[e];
    const double c = (nodal_coeff[t[0]] + nodal_coeff[t[1]] + nodal_coeff[t[2]]) / 3.0;
    const auto& k = unit_[e];
    const auto& s = slots_[e];
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) values[s[a * 3 + b]] += c * k[a][b];
  }
}

CsrMatrix Assembler::stiffness(std::span<const double> nodal_coeff) const {
  auto m = pattern();
  stiffness_values(nodal_coeff, m.values());
  return m;
}

CsrMatrix assemble_stiffness(const mesh::TriMesh& mesh, std::span<const double> nodal_coeff) {
  return Assembler(mesh).stiffness(nodal_coeff);
}

std::vector<double> assemble_load(const mesh::TriMesh& mesh, double f) {
  std::vector<double> b(mesh.num_nodes(), 0.0);
  for (const auto& t : mesh.triangles) {
    const double area = std::abs(mesh::signed_area(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]));
    for (auto v : t) b[v] += f * area / 3.0;
  }
  return b;
}

std::vector<double> assemble_load(const mesh::TriMesh& mesh, std::span<const double> nodal_f) {
  if (nodal_f.size() != mesh.num_nodes()) throw std::invalid_argument("assemble_load: source length differs from node count");
  std::vector<double> b(mesh.num_nodes(), 0.0);
  for (const auto& t : mesh.triangles) {
    const double area = std::abs(mesh::signed_area(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]));
    const double f = (nodal_f[t[0]] + nodal_f[t[1]] + nodal_f[t[2]]) / 3.0;
    for (auto v : t) b[v] += f * area / 3.0;
  }
  return b;
}

void apply_dirichlet(CsrMatrix& matrix, std::span<double> rhs, std::span<const std::size_t> boundary_nodes, double diagonal) {
  const std::size_t n = matrix.size();
  std::vector<unsigned char> fixed(n, 0);
  for (auto b : boundary_nodes) {
    if (b >= n) throw std::out_of_range("apply_dirichlet: boundary node index out of range");
    fixed[b] = 1;
  }
  const auto& offsets = matrix.row_offsets();
  const auto& cols = matrix.columns();
  auto& vals = matrix.values();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t p = offsets[r]; p < offsets[r + 1]; ++p)
      if (fixed[r] || fixed[cols[p]]) vals[p] = (r == cols[p]) ? diagonal : 0.0;
  if (!rhs.empty()) {
    if (rhs.size() != n) throw std::invalid_argument("apply_dirichlet: rhs length mismatch");
    for (std::size_t r = 0; r < n; ++r)
      if (fixed[r]) rhs[r] = 0.0;
  }
}

std::vector<double> solve_constrained(const CsrMatrix& matrix, std::span<const double> rhs, double rel_tol, CgResult* info) {
  const std::size_t n = matrix.size();
  auto inv_diag = matrix.diagonal();
  for (auto& d : inv_diag) d = d != 0.0 ? 1.0 / d : 1.0;
  std::vector<double> x(n, 0.0);
  CgOptions opts;
  opts.rel_tol = rel_tol;
  const auto res = conjugate_gradient([&](std::span<const double> in, std::span<double> out) { matrix.multiply(in, out); },
                                      inv_diag, rhs, x, opts);
  if (info) *info = res;
  if (!res.converged) {
    std::ostringstream msg;
    msg << "conjugate gradients did not converge: " << res.iterations << " iterations, relative residual "
        << res.rel_residual;
    throw ConvergenceError(msg.str(), res.iterations, res.rel_residual);
  }
  return x;
}

std::vector<double> solve_deterministic(const mesh::TriMesh& mesh, std::span<const double> nodal_coeff, double f,
                                        double rel_tol) {
  auto a = assemble_stiffness(mesh, nodal_coeff);
  auto b = assemble_load(mesh, f);
  apply_dirichlet(a, b, mesh.boundary_nodes);
  return solve_constrained(a, b, rel_tol);
}

} // namespace ssfem::fem
