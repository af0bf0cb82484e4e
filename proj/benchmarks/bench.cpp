#include "ssfem/fem.hpp"
#include "ssfem/intrusive.hpp"
#include "ssfem/kle.hpp"
#include "ssfem/lognormal.hpp"
#include "ssfem/mesh.hpp"
#include "ssfem/pce.hpp"
#include "ssfem/sparsegrid.hpp"

#include <benchmark/benchmark.h>

using namespace ssfem;

static void BM_Cijk(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const pce::PceBasis bu(L, 3), ba(L, 6);
  for (auto _ : state) benchmark::DoNotOptimize(pce::build_cijk(ba, bu));
}
BENCHMARK(BM_Cijk)->Arg(2)->Arg(3)->Arg(4);

static void BM_Smolyak(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sparsegrid::smolyak(d, 4));
}
BENCHMARK(BM_Smolyak)->Arg(2)->Arg(3)->Arg(6);

static void BM_Assembly(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = mesh::structured_mesh(n, n);
  const fem::Assembler assembler(m);
  const std::vector<double> coeff(m.num_nodes(), 1.3);
  auto values = assembler.pattern().values();
  for (auto _ : state) {
    assembler.stiffness_values(coeff, values);
    benchmark::DoNotOptimize(values.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * m.triangles.size()));
}
BENCHMARK(BM_Assembly)->Arg(32)->Arg(128);

static void BM_BlockApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = mesh::structured_mesh(n, n);
  const int L = 3, p_u = 3;
  const auto g = kle::gaussian_modes(kle::eigen_2d(0.5, 1.0, 0.09, L), m.nodes, 0.0, L);
  auto ba = std::make_shared<const pce::PceBasis>(L, 2 * p_u);
  const pce::PceBasis bu(L, p_u);
  auto modes = intrusive::assemble_mode_matrices(m, lognormal::lognormal_pce(g, ba));
  for (auto& a : modes) fem::apply_dirichlet(a, {}, m.boundary_nodes, 0.0);
  const intrusive::BlockOperator op(std::move(modes), std::make_shared<const pce::CijkTensor>(pce::build_cijk(*ba, bu)),
                                    bu.size(), m.boundary_mask());
  std::vector<double> x(op.size(), 1.0), y(op.size());
  for (auto _ : state) {
    op.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_BlockApply)->Arg(24)->Arg(64);

BENCHMARK_MAIN();
