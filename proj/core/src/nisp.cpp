#include "ssfem/nisp.hpp"

#include "ssfem/errors.hpp"
#include "ssfem/fem.hpp"
#include "ssfem/lognormal.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ssfem::nisp {

std::size_t sample_count(const sparsegrid::SparseGrid& grid) { return grid.size(); }

StochasticField project(const Response& response, std::size_t num_nodes, std::shared_ptr<const pce::PceBasis> basis,
                        const sparsegrid::SparseGrid& grid) {
  if (!basis) throw std::invalid_argument("nisp: null basis");
  if (grid.dimension() != basis->dimension())
    throw std::invalid_argument("nisp: sparse grid dimension differs from basis dimension");
  StochasticField field(basis, num_nodes, FieldRole::Solution);
  std::vector<double> u(num_nodes);
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const auto xi = grid.point(q);
    response(xi, u);
    const auto psi = basis->eval_all(xi);
    const double w = grid.weight(q);
    for (std::size_t k = 0; k < basis->size(); ++k) {
      const double s = w * psi[k];
      auto row = field.row(k);
      for (std::size_t n = 0; n < num_nodes; ++n) row[n] += s * u[n];
    }
  }
  for (std::size_t k = 0; k < basis->size(); ++k) {
    const double inv = 1.0 / basis->variance(k);
    for (auto& v : field.row(k)) v *= inv;
  }
  return field;
}

struct SampleSolver::Impl {
  const mesh::TriMesh* mesh;
  const kle::GaussianModes* modes;
  fem::Assembler assembler;
  std::vector<double> load;
  double rel_tol;

  Impl(const mesh::TriMesh& m, const kle::GaussianModes& g, double f, double tol)
      : mesh(&m), modes(&g), assembler(m), load(fem::assemble_load(m, f)), rel_tol(tol) {
    for (auto b : m.boundary_nodes) load[b] = 0.0;
  }
};

SampleSolver::SampleSolver(const mesh::TriMesh& mesh, const kle::GaussianModes& modes, double f, double rel_tol)
    : impl_(std::make_shared<const Impl>(mesh, modes, f, rel_tol)) {
  if (modes.num_nodes != mesh.num_nodes()) throw std::invalid_argument("nisp: Gaussian modes do not match mesh node count");
}

void SampleSolver::solve(std::span<const double> xi, std::span<double> u) const {
  const auto& im = *impl_;
  const auto coeff = lognormal::lognormal_sample(*im.modes, xi);
  auto a = im.assembler.pattern();
  im.assembler.stiffness_values(coeff, a.values());
  fem::apply_dirichlet(a, {}, im.mesh->boundary_nodes);
  const auto x = fem::solve_constrained(a, im.load, im.rel_tol);
  std::copy(x.begin(), x.end(), u.begin());
}

StochasticField nisp_solve(const mesh::TriMesh& mesh, const kle::GaussianModes& modes,
                           std::shared_ptr<const pce::PceBasis> basis_u, const sparsegrid::SparseGrid& grid, double f,
                           const NispOptions& options) {
  const SampleSolver solver(mesh, modes, f, options.rel_tol);
  std::size_t q = 0;
  auto response = [&](std::span<const double> xi, std::span<double> u) {
    try {
      solver.solve(xi, u);
    } catch (const ConvergenceError& e) {
      std::ostringstream msg;
      msg << "nisp: sample solve failed at grid point " << q << " (";
      for (std::size_t d = 0; d < xi.size(); ++d) msg << (d ? ", " : "") << xi[d];
      msg << "): " << e.what();
      throw ConvergenceError(msg.str(), e.iterations(), e.residual());
    }
    ++q;
  };
  return project(response, mesh.num_nodes(), std::move(basis_u), grid);
}

} // namespace ssfem::nisp
