#pragma once

#include "ssfem/errors.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ssfem::mesh {

using Point = std::array<double, 2>;
using Triangle = std::array<std::size_t, 3>;

/// Triangulation of the unit square with counter-clockwise P1 triangles.
struct TriMesh {
  std::vector<Point> nodes;
  std::vector<Triangle> triangles;
  std::vector<std::size_t> boundary_nodes; // sorted, unique

  std::size_t num_nodes() const noexcept { return nodes.size(); }
  std::size_t num_triangles() const noexcept { return triangles.size(); }

  /// Mask of length num_nodes(), 1 on boundary nodes.
  std::vector<unsigned char> boundary_mask() const;
};

double signed_area(const Point& p0, const Point& p1, const Point& p2);

/// Nodes on edges owned by exactly one triangle, sorted.
std::vector<std::size_t> find_boundary_nodes(std::size_t num_nodes, const std::vector<Triangle>& triangles);

/// (nx+1)(ny+1) nodes, 2 nx ny triangles, each cell cut along its
/// lower-left to upper-right diagonal. Throws std::invalid_argument for
/// zero subdivisions.
TriMesh structured_mesh(std::size_t nx, std::size_t ny);

/// Thrown by load_mesh; line() is the 1-based offending line (0 if unknown).
class MeshFormatError : public IoError {
public:
  MeshFormatError(const std::string& what, std::size_t line) : IoError(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

struct LoadedMesh {
  TriMesh mesh;
  std::vector<std::string> warnings;
};

/**
 * Text format: first data line "N M", then N lines "x y", then M lines
 * "i j k" with 0-based node indices. '#' starts a comment; blank lines are
 * skipped. Clockwise triangles are reoriented and reported in `warnings`.
 */
LoadedMesh read_mesh(std::istream& in);
LoadedMesh load_mesh(const std::string& path);

/// Writes coordinates with max_digits10 so a reload is bit-exact.
void write_mesh(std::ostream& out, const TriMesh& mesh);
void save_mesh(const TriMesh& mesh, const std::string& path);

} // namespace ssfem::mesh
