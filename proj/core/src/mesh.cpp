#include "ssfem/mesh.hpp"

#include "ssfem/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ssfem::mesh {

namespace {

constexpr double kCoordTol = 1e-12;

// Next non-empty line with comments stripped; returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

} // namespace

std::vector<unsigned char> TriMesh::boundary_mask() const {
  std::vector<unsigned char> mask(nodes.size(), 0);
  for (auto b : boundary_nodes) mask[b] = 1;
  return mask;
}

double signed_area(const Point& p0, const Point& p1, const Point& p2) {
  return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

std::vector<std::size_t> find_boundary_nodes(std::size_t num_nodes, const std::vector<Triangle>& triangles) {
  std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) {
      auto u = t[static_cast<std::size_t>(e)];
      auto v = t[static_cast<std::size_t>((e + 1) % 3)];
      if (u > v) std::swap(u, v);
      ++edge_count[{u, v}];
    }
  std::vector<unsigned char> mark(num_nodes, 0);
  for (const auto& [edge, count] : edge_count)
    if (count == 1) mark[edge.first] = mark[edge.second] = 1;
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < num_nodes; ++n)
    if (mark[n]) out.push_back(n);
  return out;
}

TriMesh structured_mesh(std::size_t nx, std::size_t ny) {
  if (nx == 0 || ny == 0) throw std::invalid_argument("structured_mesh: need at least one subdivision per direction");
  TriMesh m;
  m.nodes.reserve((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i)
      m.nodes.push_back({static_cast<double>(i) / static_cast<double>(nx), static_cast<double>(j) / static_cast<double>(ny)});
  auto id = [nx](std::size_t i, std::size_t j) { return j * (nx + 1) + i; };
  m.triangles.reserve(2 * nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i)
      if (i == 0 || j == 0 || i == nx || j == ny) m.boundary_nodes.push_back(id(i, j));
  return m;
}

LoadedMesh read_mesh(std::istream& in) {
  LoadedMesh out;
  std::string line;
  std::size_t lineno = 0;

  if (!next_data_line(in, line, lineno)) throw MeshFormatError("mesh: missing header line \"N M\"", lineno);
  long long n_nodes = -1;
  long long n_tris = -1;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> n_nodes >> n_tris) || (ss >> extra) || n_nodes < 0 || n_tris < 0)
      throw MeshFormatError("mesh: line " + std::to_string(lineno) + ": malformed header, expected \"N M\"", lineno);
  }

  auto& m = out.mesh;
  m.nodes.reserve(static_cast<std::size_t>(n_nodes));
  for (long long n = 0; n < n_nodes; ++n) {
    if (!next_data_line(in, line, lineno))
      throw MeshFormatError("mesh: expected " + std::to_string(n_nodes) + " node lines, found " + std::to_string(n), lineno);
    std::istringstream ss(line);
    Point p{};
    std::string extra;
    if (!(ss >> p[0] >> p[1]) || (ss >> extra))
      throw MeshFormatError("mesh: line " + std::to_string(lineno) + ": malformed node, expected \"x y\"", lineno);
    if (p[0] < -kCoordTol || p[0] > 1.0 + kCoordTol || p[1] < -kCoordTol || p[1] > 1.0 + kCoordTol)
      throw MeshFormatError("mesh: line " + std::to_string(lineno) + ": node outside the unit square", lineno);
    m.nodes.push_back(p);
  }

  m.triangles.reserve(static_cast<std::size_t>(n_tris));
  for (long long t = 0; t < n_tris; ++t) {
    if (!next_data_line(in, line, lineno))
      throw MeshFormatError("mesh: expected " + std::to_string(n_tris) + " triangle lines, found " + std::to_string(t), lineno);
    std::istringstream ss(line);
    long long idx[3];
    std::string extra;
    if (!(ss >> idx[0] >> idx[1] >> idx[2]) || (ss >> extra))
      throw MeshFormatError("mesh: line " + std::to_string(lineno) + ": malformed triangle, expected \"i j k\"", lineno);
    for (long long v : idx)
      if (v < 0 || v >= n_nodes)
        throw MeshFormatError("mesh: line " + std::to_string(lineno) + ": triangle " + std::to_string(t) +
                                  " references node " + std::to_string(v) + " (node count " + std::to_string(n_nodes) + ")",
                              lineno);
    Triangle tri{static_cast<std::size_t>(idx[0]), static_cast<std::size_t>(idx[1]), static_cast<std::size_t>(idx[2])};
    const double area = signed_area(m.nodes[tri[0]], m.nodes[tri[1]], m.nodes[tri[2]]);
    if (area == 0.0 || tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw MeshFormatError("mesh: line " + std::to_string(lineno) + ": triangle " + std::to_string(t) + " is degenerate", lineno);
    if (area < 0.0) {
      std::swap(tri[1], tri[2]);
      out.warnings.push_back("mesh: line " + std::to_string(lineno) + ": triangle " + std::to_string(t) +
                             " was clockwise; reoriented");
    }
    m.triangles.push_back(tri);
  }
  if (next_data_line(in, line, lineno))
    throw MeshFormatError("mesh: line " + std::to_string(lineno) + ": unexpected trailing data", lineno);

  m.boundary_nodes = find_boundary_nodes(m.nodes.size(), m.triangles);
  return out;
}

LoadedMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const TriMesh& mesh) {
  const auto prec = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << mesh.nodes.size() << ' ' << mesh.triangles.size() << '\n';
  for (const auto& p : mesh.nodes) out << p[0] << ' ' << p[1] << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out.precision(prec);
}

void save_mesh(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_mesh(out, mesh);
  if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace ssfem::mesh
