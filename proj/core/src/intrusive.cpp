#include "ssfem/intrusive.hpp"

#include "ssfem/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ssfem::intrusive {

BlockOperator::BlockOperator(std::vector<CsrMatrix> modes, std::shared_ptr<const pce::CijkTensor> cijk, std::size_t blocks,
                             std::vector<unsigned char> constrained)
    : modes_(std::move(modes)), cijk_(std::move(cijk)), blocks_(blocks), constrained_(std::move(constrained)) {
  if (modes_.empty()) throw std::invalid_argument("BlockOperator: need at least one mode matrix");
  if (!cijk_) throw std::invalid_argument("BlockOperator: null C_ijk tensor");
  if (blocks_ == 0 || blocks_ > cijk_->out_size()) throw std::invalid_argument("BlockOperator: block count exceeds C_ijk shape");
  if (modes_.size() > cijk_->in_size()) throw std::invalid_argument("BlockOperator: more mode matrices than C_ijk input terms");
  n_ = modes_.front().size();
  for (const auto& m : modes_)
    if (!m.same_pattern(modes_.front())) throw std::invalid_argument("BlockOperator: mode matrices must share one sparsity pattern");
  if (!constrained_.empty() && constrained_.size() != n_)
    throw std::invalid_argument("BlockOperator: constrained mask length differs from block size");

  for (const auto& e : cijk_->entries())
    if (e.i < modes_.size() && e.j < blocks_ && e.k < blocks_) active_.push_back(e);
  std::sort(active_.begin(), active_.end(), [](const pce::CijkEntry& a, const pce::CijkEntry& b) {
    return std::tie(a.k, a.j, a.i) < std::tie(b.k, b.j, b.i);
  });
}

void BlockOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size() || y.size() != size()) throw std::invalid_argument("block_apply: block vector size mismatch");
  std::fill(y.begin(), y.end(), 0.0);
  for (const auto& e : active_) {
    modes_[e.i].multiply_add(x.subspan(e.j * n_, n_), y.subspan(e.k * n_, n_), e.value);
  }
  if (!constrained_.empty())
    for (std::size_t k = 0; k < blocks_; ++k)
      for (std::size_t r = 0; r < n_; ++r)
        if (constrained_[r]) y[k * n_ + r] += x[k * n_ + r];
}

std::vector<double> BlockOperator::preconditioner_diagonal() const {
  const auto d0 = modes_.front().diagonal();
  std::vector<double> diag(size(), 1.0);
  for (std::size_t k = 0; k < blocks_; ++k) {
    const double c = (*cijk_)(0, k, k);
    for (std::size_t r = 0; r < n_; ++r) {
      if (!constrained_.empty() && constrained_[r]) continue;
      const double v = c * d0[r];
      diag[k * n_ + r] = v != 0.0 ? v : 1.0;
    }
  }
  return diag;
}

std::vector<CsrMatrix> assemble_mode_matrices(const mesh::TriMesh& mesh, const StochasticField& l_field) {
  if (l_field.num_nodes() != mesh.num_nodes())
    throw std::invalid_argument("assemble_mode_matrices: field node count differs from mesh");
  const fem::Assembler assembler(mesh);
  std::vector<CsrMatrix> modes;
  modes.reserve(l_field.num_terms());
  for (std::size_t i = 0; i < l_field.num_terms(); ++i) modes.push_back(assembler.stiffness(l_field.row(i)));
  return modes;
}

std::vector<double> block_apply(const BlockOperator& op, std::span<const double> x) {
  std::vector<double> y(op.size());
  op.apply(x, y);
  return y;
}

std::vector<double> stochastic_rhs(std::span<const double> load, const pce::PceBasis& basis_u) {
  std::vector<double> rhs(load.size() * basis_u.size(), 0.0);
  std::copy(load.begin(), load.end(), rhs.begin());
  return rhs;
}

CsrMatrix assemble_explicit(const BlockOperator& op) {
  const std::size_t n = op.block_size();
  const std::size_t nb = op.blocks();
  const auto& ref = op.modes().front();

  // A_jk values on the shared pattern, keyed by (k, j).
  std::vector<std::vector<double>> blocks(nb * nb);
  for (const auto& e : op.active_entries()) {
    auto& vals = blocks[e.k * nb + e.j];
    if (vals.empty()) vals.assign(ref.nnz(), 0.0);
    const auto& mv = op.modes()[e.i].values();
    for (std::size_t p = 0; p < mv.size(); ++p) vals[p] += e.value * mv[p];
  }

  const auto& offsets = ref.row_offsets();
  const auto& cols = ref.columns();
  const auto& mask = op.constrained();
  std::vector<std::size_t> g_offsets{0};
  std::vector<std::size_t> g_cols;
  std::vector<double> g_vals;
  for (std::size_t k = 0; k < nb; ++k)
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < nb; ++j) {
        const auto& vals = blocks[k * nb + j];
        const bool identity = j == k && !mask.empty() && mask[r];
        if (vals.empty() && !identity) continue;
        for (std::size_t p = offsets[r]; p < offsets[r + 1]; ++p) {
          double v = vals.empty() ? 0.0 : vals[p];
          if (identity && cols[p] == r) v += 1.0;
          g_cols.push_back(j * n + cols[p]);
          g_vals.push_back(v);
        }
      }
      g_offsets.push_back(g_cols.size());
    }
  return CsrMatrix(n * nb, std::move(g_offsets), std::move(g_cols), std::move(g_vals));
}

IntrusiveSolution solve_intrusive(const mesh::TriMesh& mesh, const StochasticField& l_field, double f,
                                  std::shared_ptr<const pce::PceBasis> basis_u, const IntrusiveOptions& options) {
  if (!basis_u) throw std::invalid_argument("solve_intrusive: null output basis");
  if (l_field.role() != FieldRole::InputCoefficient)
    throw std::invalid_argument("solve_intrusive: coefficient field must be tagged as input");
  l_field.validate();

  auto cijk = std::make_shared<const pce::CijkTensor>(pce::build_cijk(l_field.basis(), *basis_u));
  auto modes = assemble_mode_matrices(mesh, l_field);
  for (auto& m : modes) fem::apply_dirichlet(m, {}, mesh.boundary_nodes, 0.0);

  const BlockOperator op(std::move(modes), cijk, basis_u->size(), mesh.boundary_mask());
  const std::size_t n = mesh.num_nodes();

  auto load = fem::assemble_load(mesh, f);
  for (auto b : mesh.boundary_nodes) load[b] = 0.0;
  const auto rhs = stochastic_rhs(load, *basis_u);

  auto inv_diag = op.preconditioner_diagonal();
  for (auto& d : inv_diag) d = 1.0 / d;

  std::vector<double> x(op.size(), 0.0);
  CgOptions cg;
  cg.rel_tol = options.rel_tol;
  cg.max_iterations = options.max_iterations;
  const auto res = conjugate_gradient([&](std::span<const double> in, std::span<double> out) { op.apply(in, out); },
                                      inv_diag, rhs, x, cg);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "intrusive block CG did not converge: " << res.iterations << " iterations, relative residual "
        << res.rel_residual;
    throw ConvergenceError(msg.str(), res.iterations, res.rel_residual);
  }

  IntrusiveSolution out{StochasticField(std::move(basis_u), n, FieldRole::Solution, std::move(x)), res, cijk->nnz()};
  return out;
}

} // namespace ssfem::intrusive
