// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any selected criterion fails. `--only N` runs one criterion.

#include "../unit/oracles.hpp"

#include "ssfem/fem.hpp"
#include "ssfem/intrusive.hpp"
#include "ssfem/kle.hpp"
#include "ssfem/lognormal.hpp"
#include "ssfem/mesh.hpp"
#include "ssfem/nisp.hpp"
#include "ssfem/pce.hpp"
#include "ssfem/postproc.hpp"
#include "ssfem/sparsegrid.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ssfem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += " [fail: " + what + "]";
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t nearest_node(const mesh::TriMesh& m, double x, double y) {
  std::size_t best = 0;
  double bd = 1e300;
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    const double d = std::hypot(m.nodes[i][0] - x, m.nodes[i][1] - y);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

// Largest |coefficient| over all terms of total degree d, for d = 0..order.
std::vector<double> degree_max_norms(const StochasticField& f) {
  std::vector<double> out(static_cast<std::size_t>(f.basis().order()) + 1, 0.0);
  for (std::size_t j = 0; j < f.num_terms(); ++j) {
    const auto d = static_cast<std::size_t>(pce::total_degree(f.basis().term(j)));
    for (double v : f.row(j)) out[d] = std::max(out[d], std::abs(v));
  }
  return out;
}

struct BaselineRun {
  mesh::TriMesh mesh;
  kle::GaussianModes modes;
  std::shared_ptr<const pce::PceBasis> basis_u;
  StochasticField intrusive;
  StochasticField nisp;
};

// b = 1, sigma = 0.3, L = 3, p_u = 3, f = 1 on structured_mesh(24, 24); NISP level 4.
const BaselineRun& baseline_run() {
  static const BaselineRun run = [] {
    auto m = mesh::structured_mesh(24, 24);
    const int L = 3, p_u = 3;
    auto g = kle::gaussian_modes(kle::eigen_2d(0.5, 1.0, 0.09, L), m.nodes, 0.0, L);
    auto bu = std::make_shared<const pce::PceBasis>(L, p_u);
    auto ba = std::make_shared<const pce::PceBasis>(L, 2 * p_u);
    const auto l_field = lognormal::lognormal_pce(g, ba);
    auto intr = intrusive::solve_intrusive(m, l_field, 1.0, bu).field;
    auto ni = nisp::nisp_solve(m, g, bu, sparsegrid::smolyak(L, 4), 1.0);
    return BaselineRun{std::move(m), std::move(g), bu, std::move(intr), std::move(ni)};
  }();
  return run;
}

void kle_tables(Outcome& o) {
  const auto t0 = Clock::now();
  const auto pairs = kle::eigen_1d(0.5, 1.0, 1.0, 7);
  const double omega[3] = {1.306, 3.673, 6.585};
  const double lam1[3] = {0.7388, 0.1380, 0.0451};
  for (int n = 0; n < 3; ++n) {
    // value-matched: the pair must appear somewhere among the computed roots
    const bool found = std::any_of(pairs.begin(), pairs.end(), [&](const kle::Eigenpair1D& p) {
      return std::abs(p.omega - omega[n]) < 1e-3 && std::abs(p.lambda - lam1[n]) < 1e-3;
    });
    o.require(found, "1D pair " + std::to_string(n + 1));
  }
  const auto e = kle::eigen_2d(0.5, 1.0, 1.0, 7);
  const double lam2[7] = {0.5458, 0.1020, 0.1020, 0.0333, 0.0333, 0.0190, 0.0158};
  const int ix[7] = {1, 1, 2, 1, 3, 2, 1};
  const int iy[7] = {1, 2, 1, 3, 1, 2, 4};
  double worst = 0.0;
  for (int n = 0; n < 7; ++n) {
    const auto& p = e.pairs[static_cast<std::size_t>(n)];
    worst = std::max(worst, std::abs(p.lambda - lam2[n]));
    // each 1D index refers to the n-th listed 1D eigenvalue; compare by value
    const double want = pairs[static_cast<std::size_t>(ix[n] - 1)].lambda * pairs[static_cast<std::size_t>(iy[n] - 1)].lambda;
    o.require(p.ix == ix[n] && p.iy == iy[n] && std::abs(p.lambda - want) < 1e-12, "sort index " + std::to_string(n + 1));
  }
  o.require(worst < 1e-3, "2D eigenvalues");
  const double t = seconds_since(t0);
  o.require(t < 1.0, "runtime");
  o.detail << "max 2D error " << worst << ", " << t << " s";
}

void decay_claims(Outcome& o) {
  const auto t0 = Clock::now();
  const int n = 400;
  const auto p1 = kle::eigen_1d(0.5, 1.0, 1.0, n);
  std::vector<double> l1(p1.size());
  std::transform(p1.begin(), p1.end(), l1.begin(), [](const kle::Eigenpair1D& p) { return p.lambda; });
  const double r1 = kle::partial_sum_ratio(l1, 4, n);
  const auto e2 = kle::eigen_2d(0.5, 1.0, 1.0, n);
  const auto l2 = e2.lambdas();
  const double r2 = kle::partial_sum_ratio(l2, 20, n);
  o.require(r1 >= 0.95, "1D ratio");
  o.require(r2 >= 0.95, "2D ratio");
  const double t = seconds_since(t0);
  o.require(t < 5.0, "runtime");
  o.detail << "1D k=4 ratio " << r1 << ", 2D k=20 ratio " << r2 << ", " << t << " s";
}

void pce_structure(Outcome& o) {
  const pce::PceBasis b(3, 2);
  const std::vector<pce::MultiIndex> order{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
                                           {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 0, 2}, {0, 1, 1}};
  const std::vector<double> var{1, 1, 1, 1, 2, 1, 2, 1, 2, 1};
  o.require(b.size() == 10, "term count");
  o.require(b.terms() == order, "term order");
  o.require(b.variances() == var, "variances");
  int checked = 0;
  for (int L = 1; L <= 6; ++L)
    for (int p = 0; p <= 4; ++p) {
      std::size_t enumerated = 0;
      std::vector<int> m(static_cast<std::size_t>(L), 0);
      while (true) {
        if (std::accumulate(m.begin(), m.end(), 0) <= p) ++enumerated;
        std::size_t d = 0;
        while (d < m.size() && ++m[d] > p) m[d++] = 0;
        if (d == m.size()) break;
      }
      o.require(pce::term_count(L, p) == enumerated && pce::PceBasis(L, p).size() == enumerated,
                "count L=" + std::to_string(L) + " p=" + std::to_string(p));
      ++checked;
    }
  o.detail << checked << " (L,p) pairs enumerated";
}

void cijk_oracle(Outcome& o) {
  const auto t0 = Clock::now();
  const pce::PceBasis b(2, 2);
  const auto c = pce::build_cijk(b, b);
  const auto gh = oracle::gauss_hermite(10);
  double worst = 0.0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k) {
        double q = 0.0;
        for (std::size_t a = 0; a < gh.nodes.size(); ++a)
          for (std::size_t s = 0; s < gh.nodes.size(); ++s) {
            const double xi[2] = {gh.nodes[a], gh.nodes[s]};
            q += gh.weights[a] * gh.weights[s] * b.eval(i, xi) * b.eval(j, xi) * b.eval(k, xi);
          }
        worst = std::max(worst, std::abs(c(i, j, k) - q));
      }
  o.require(worst < 1e-10, "tensor mismatch");
  const double t = seconds_since(t0);
  o.require(t < 1.0, "runtime");
  o.detail << "216 triples, max error " << worst << ", " << t << " s";
}

void sparse_tables(Outcome& o) {
  const auto l1 = sparsegrid::gauss_hermite(1);
  const auto l2 = sparsegrid::gauss_hermite(2);
  const auto l3 = sparsegrid::gauss_hermite(3);
  // tolerance is half a unit in the last printed digit
  o.require(l1.nodes.size() == 1 && std::abs(l1.nodes[0]) < 0.5 && std::abs(l1.weights[0] - 1.0) < 0.5, "level 1");
  o.require(l2.nodes.size() == 2 && std::abs(l2.nodes[0] + 1) < 0.5 && std::abs(l2.nodes[1] - 1) < 0.5 &&
                std::abs(l2.weights[0] - 0.5) < 0.05 && std::abs(l2.weights[1] - 0.5) < 0.05,
            "level 2");
  o.require(l3.nodes.size() == 3 && std::abs(l3.nodes[0] + 1.7321) < 5e-5 && std::abs(l3.nodes[1]) < 5e-5 &&
                std::abs(l3.nodes[2] - 1.7321) < 5e-5 && std::abs(l3.weights[0] - 0.167) < 5e-4 &&
                std::abs(l3.weights[1] - 0.667) < 5e-4 && std::abs(l3.weights[2] - 0.167) < 5e-4,
            "level 3");
  const auto g = sparsegrid::smolyak(2, 3);
  const double s3 = 1.7321;
  const double table[13][3] = {{-s3, 0, 0.167}, {-1, -1, 0.25}, {-1, 0, -0.5}, {-1, 1, 0.25}, {0, -s3, 0.167},
                               {0, -1, -0.5},   {0, 0, 1.333},  {0, 1, -0.5},  {0, s3, 0.167}, {1, -1, 0.25},
                               {1, 0, -0.5},    {1, 1, 0.25},   {s3, 0, 0.167}};
  o.require(g.size() == 13, "row count");
  double worst = 0.0;
  for (std::size_t q = 0; q < std::min<std::size_t>(g.size(), 13); ++q)
    worst = std::max({worst, std::abs(g.point(q)[0] - table[q][0]), std::abs(g.point(q)[1] - table[q][1]),
                      std::abs(g.weight(q) - table[q][2])});
  o.require(worst < 1e-3, "Smolyak rows");
  const double wsum = std::accumulate(g.weights().begin(), g.weights().end(), 0.0);
  o.require(std::abs(wsum - 1.0) < 1e-12, "weight sum");
  o.detail << g.size() << " rows, max deviation " << worst << ", weight sum - 1 = " << wsum - 1.0;
}

void deterministic_fem(Outcome& o) {
  const auto t0 = Clock::now();
  const double ref = oracle::poisson_square(0.5, 0.5);
  std::vector<double> err;
  double center32 = 0.0;
  for (std::size_t n : {16u, 32u, 64u}) {
    const auto m = mesh::structured_mesh(n, n);
    const auto u = fem::solve_deterministic(m, std::vector<double>(m.num_nodes(), 1.0), 1.0, 1e-12);
    const double c = u[nearest_node(m, 0.5, 0.5)];
    if (n == 32) center32 = c;
    err.push_back(std::abs(c - ref));
  }
  o.require(std::abs(center32 - ref) < 0.01 * ref, "center value");
  const double r1 = err[0] / err[1], r2 = err[1] / err[2];
  o.require(r1 >= 3.5 && r1 <= 4.5 && r2 >= 3.5 && r2 <= 4.5, "convergence ratio");
  const double t = seconds_since(t0);
  o.require(t < 10.0, "runtime");
  o.detail << "u(0.5,0.5) = " << center32 << " vs " << ref << ", ratios " << r1 << " " << r2 << ", " << t << " s";
}

void baseline_agreement(Outcome& o) {
  const auto t0 = Clock::now();
  const auto& run = baseline_run();
  const auto si = postproc::field_stats(run.intrusive);
  const auto sn = postproc::field_stats(run.nisp);
  const double dmean = postproc::relative_l2(si.mean, sn.mean);
  const double dstd = postproc::relative_l2(si.std_dev, sn.std_dev);
  o.require(dmean < 5e-3, "intrusive/NISP mean");
  o.require(dstd < 5e-2, "intrusive/NISP std");

  const nisp::SampleSolver solver(run.mesh, run.modes, 1.0);
  const std::size_t n = run.mesh.num_nodes();
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  const int samples = 10000;
  std::vector<double> sum(n, 0.0), sum2(n, 0.0), u(n), xi(3);
  for (int s = 0; s < samples; ++s) {
    for (auto& v : xi) v = normal(rng);
    solver.solve(xi, u);
    for (std::size_t i = 0; i < n; ++i) {
      sum[i] += u[i];
      sum2[i] += u[i] * u[i];
    }
  }
  std::vector<double> mc_mean(n), mc_std(n);
  for (std::size_t i = 0; i < n; ++i) {
    mc_mean[i] = sum[i] / samples;
    mc_std[i] = std::sqrt(std::max(0.0, (sum2[i] - samples * mc_mean[i] * mc_mean[i]) / (samples - 1)));
  }
  const double mc_dmean = postproc::relative_l2(si.mean, mc_mean);
  const double mc_dstd = postproc::relative_l2(si.std_dev, mc_std);
  o.require(mc_dmean < 1e-2, "Monte-Carlo mean");
  o.require(mc_dstd < 5e-2, "Monte-Carlo std");
  const double t = seconds_since(t0);
  o.require(t < 600.0, "runtime");
  o.detail << "NISP mean " << dmean << " std " << dstd << "; MC mean " << mc_dmean << " std " << mc_dstd << ", "
           << t << " s";
}

void degeneration(Outcome& o) {
  const auto m = mesh::structured_mesh(10, 10);
  const int L = 3, p_u = 3;
  const auto g = kle::gaussian_modes(kle::eigen_2d(0.5, 1.0, 0.0, L), m.nodes, 0.0, L);
  auto bu = std::make_shared<const pce::PceBasis>(L, p_u);
  auto ba = std::make_shared<const pce::PceBasis>(L, 2 * p_u);
  const auto det = fem::solve_deterministic(m, std::vector<double>(m.num_nodes(), 1.0), 1.0);
  const auto intr = intrusive::solve_intrusive(m, lognormal::lognormal_pce(g, ba), 1.0, bu).field;
  const auto ni = nisp::nisp_solve(m, g, bu, sparsegrid::smolyak(L, 3), 1.0);
  double higher = 0.0, mean_err = 0.0;
  for (const auto* f : {&intr, &ni}) {
    for (std::size_t j = 1; j < bu->size(); ++j) {
      double s = 0.0;
      for (double v : f->row(j)) s += v * v;
      higher = std::max(higher, std::sqrt(s));
    }
    mean_err = std::max(mean_err, postproc::relative_l2(det, f->row(0)));
  }
  o.require(higher < 1e-8, "higher coefficients");
  o.require(mean_err < 1e-8, "mean equals deterministic");

  // 9-node mesh, L = 2, p_u = 1, p_A = 2: block operator against a dense matrix
  // built from the mode matrices and closed-form triple moments.
  const auto m9 = mesh::structured_mesh(2, 2);
  const auto g9 = kle::gaussian_modes(kle::eigen_2d(0.5, 1.0, 0.09, 2), m9.nodes, 0.0, 2);
  const pce::PceBasis ba9(2, 2), bu9(2, 1);
  const auto l9 = lognormal::lognormal_pce(g9, std::make_shared<const pce::PceBasis>(ba9));
  const auto modes = intrusive::assemble_mode_matrices(m9, l9);
  const intrusive::BlockOperator op(modes, std::make_shared<const pce::CijkTensor>(pce::build_cijk(ba9, bu9)),
                                    bu9.size());
  const std::size_t n = m9.num_nodes(), nb = bu9.size();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n * nb), static_cast<Eigen::Index>(n * nb));
  for (std::size_t i = 0; i < ba9.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nb; ++k) {
        double c = 1.0;
        for (int d = 0; d < 2; ++d) c *= oracle::triple_moment(ba9.term(i)[d], bu9.term(j)[d], bu9.term(k)[d]);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t s = 0; s < n; ++s)
            dense(static_cast<Eigen::Index>(k * n + r), static_cast<Eigen::Index>(j * n + s)) += c * modes[i].at(r, s);
      }
  double worst = 0.0;
  for (std::size_t col = 0; col < n * nb; ++col) {
    std::vector<double> e(n * nb, 0.0);
    e[col] = 1.0;
    const auto y = intrusive::block_apply(op, e);
    for (std::size_t r = 0; r < n * nb; ++r)
      worst = std::max(worst, std::abs(y[r] - dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col))));
  }
  o.require(worst < 1e-12, "block operator vs dense");
  o.detail << "sigma=0 higher-norm " << higher << ", mean error " << mean_err << "; dense mismatch " << worst;
}

void coefficient_decay(Outcome& o) {
  const auto& run = baseline_run();
  const auto di = degree_max_norms(run.intrusive);
  const auto dn = degree_max_norms(run.nisp);
  o.require(di[1] >= di[2] && di[2] >= di[3], "intrusive decay");
  o.require(dn[1] >= dn[2] && dn[2] >= dn[3], "NISP decay");
  o.detail << "intrusive " << di[1] << " " << di[2] << " " << di[3] << "; NISP " << dn[1] << " " << dn[2] << " "
           << dn[3];
}

} // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"KLE tables", kle_tables},
      {"eigenvalue decay", decay_claims},
      {"PCE structure", pce_structure},
      {"C_ijk quadrature oracle", cijk_oracle},
      {"sparse grid tables", sparse_tables},
      {"deterministic FEM", deterministic_fem},
      {"intrusive/NISP/Monte-Carlo agreement", baseline_agreement},
      {"degeneration", degeneration},
      {"coefficient decay", coefficient_decay},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    if (only && static_cast<std::size_t>(only) != c + 1) continue;
    Outcome o;
    try {
      criteria[c].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures += std::string(" [exception: ") + e.what() + "]";
    }
    std::printf("%s criterion %zu (%s): %s%s\n", o.pass ? "PASS" : "FAIL", c + 1, criteria[c].first,
                o.detail.str().c_str(), o.failures.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
