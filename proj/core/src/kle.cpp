#include "ssfem/kle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace ssfem::kle {

namespace {

constexpr double kPole = 1e-9;        // interior margin away from tan asymptotes
constexpr double kBisectTol = 1e-12;  // |dw|
constexpr double kDomainTol = 1e-12;

double odd_branch(double a, double b, double w) { return 1.0 / b - w * std::tan(w * a); }
double even_branch(double a, double b, double w) { return w + std::tan(w * a) / b; }

void check_inputs(double a, double b, int n) {
  if (!(a > 0.0)) throw std::invalid_argument("kle: half-width a must be positive");
  if (!(b > 0.0)) throw std::invalid_argument("kle: correlation length b must be positive");
  if (n < 1) throw std::invalid_argument("kle: need at least one eigenpair");
}

template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi < 0.0)) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "kle: no sign change in bracket (" << lo << ", " << hi << ")";
    throw std::runtime_error(msg.str());
  }
  while (hi - lo >= kBisectTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> solve_omegas(double a, double b, int n) {
  check_inputs(a, b, n);
  const double pi = std::numbers::pi;
  std::vector<double> omegas;
  omegas.reserve(static_cast<std::size_t>(n));
  for (int k = 0; static_cast<int>(omegas.size()) < n; ++k) {
    // odd: w a in (k pi, k pi + pi/2)
    {
      const double lo = std::max(k * pi / a, 0.0) + kPole;
      const double hi = (k * pi + pi / 2.0) / a - kPole;
      omegas.push_back(bisect([&](double w) { return odd_branch(a, b, w); }, lo, hi));
    }
    if (static_cast<int>(omegas.size()) == n) break;
    // even: w a in (k pi + pi/2, (k+1) pi)
    {
      const double lo = (k * pi + pi / 2.0) / a + kPole;
      const double hi = (k + 1) * pi / a - kPole;
      omegas.push_back(bisect([&](double w) { return even_branch(a, b, w); }, lo, hi));
    }
  }
  return omegas;
}

double omega_residual(double a, double b, int index, double omega) {
  return (index % 2 == 1) ? odd_branch(a, b, omega) : even_branch(a, b, omega);
}

std::vector<Eigenpair1D> eigen_1d(double a, double b, double sigma2, int n) {
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("kle: variance must be non-negative");
  const auto omegas = solve_omegas(a, b, n);
  std::vector<Eigenpair1D> pairs;
  pairs.reserve(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const double w = omegas[i];
    Eigenpair1D p;
    p.omega = w;
    p.lambda = sigma2 * 2.0 * b / (1.0 + b * b * w * w);
    const double s = std::sin(2.0 * w * a) / (2.0 * w);
    if (i % 2 == 0) {
      p.parity = Parity::Odd;
      p.norm = std::sqrt(a + s);
    } else {
      p.parity = Parity::Even;
      p.norm = std::sqrt(a - s);
    }
    pairs.push_back(p);
  }
  return pairs;
}

double eigenfunction_1d(const Eigenpair1D& pair, double z) {
  return (pair.parity == Parity::Odd ? std::cos(pair.omega * z) : std::sin(pair.omega * z)) / pair.norm;
}

std::vector<double> KlExpansion2D::lambdas() const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.lambda);
  return out;
}

KlExpansion2D eigen_2d(double a, double b, double sigma2, int n_terms) {
  check_inputs(a, b, n_terms);
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("kle: variance must be non-negative");

  KlExpansion2D out;
  out.a = a;
  out.b = b;
  out.sigma2 = sigma2;

  int m = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_terms)))) + 1);
  while (true) {
    // m+1 pairs: the extra one bounds every product outside the m x m grid.
    auto pairs_1d = eigen_1d(a, b, 1.0, m + 1);
    std::vector<Pair2D> cand;
    cand.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j)
        cand.push_back({pairs_1d[static_cast<std::size_t>(i - 1)].lambda * pairs_1d[static_cast<std::size_t>(j - 1)].lambda, i, j});
    std::sort(cand.begin(), cand.end(), [](const Pair2D& x, const Pair2D& y) {
      if (x.lambda != y.lambda) return x.lambda > y.lambda;
      return std::tie(x.ix, x.iy) < std::tie(y.ix, y.iy);
    });
    const double outside_bound = pairs_1d[static_cast<std::size_t>(m)].lambda * pairs_1d[0].lambda;
    if (static_cast<int>(cand.size()) >= n_terms && outside_bound < cand[static_cast<std::size_t>(n_terms - 1)].lambda) {
      cand.resize(static_cast<std::size_t>(n_terms));
      for (auto& c : cand) c.lambda *= sigma2;
      pairs_1d.pop_back();
      out.pairs_1d = std::move(pairs_1d);
      out.pairs = std::move(cand);
      return out;
    }
    m *= 2;
  }
}

double eigenfunction_2d(const KlExpansion2D& expansion, int k, const Point& x) {
  if (k < 1 || static_cast<std::size_t>(k) > expansion.pairs.size())
    throw std::out_of_range("eigenfunction_2d: mode index " + std::to_string(k) + " out of range");
  const double a = expansion.a;
  if (std::abs(x[0]) > a + kDomainTol || std::abs(x[1]) > a + kDomainTol)
    throw std::out_of_range("eigenfunction_2d: point outside [-a, a]^2");
  const auto& p = expansion.pairs[static_cast<std::size_t>(k - 1)];
  return eigenfunction_1d(expansion.pairs_1d[static_cast<std::size_t>(p.ix - 1)], x[0]) *
         eigenfunction_1d(expansion.pairs_1d[static_cast<std::size_t>(p.iy - 1)], x[1]);
}

double partial_sum_ratio(std::span<const double> lambdas, int k, int n) {
  if (lambdas.empty()) throw std::invalid_argument("partial_sum_ratio: empty eigenvalue sequence");
  if (k < 1 || k > n || static_cast<std::size_t>(n) > lambdas.size())
    throw std::out_of_range("partial_sum_ratio: need 1 <= k <= n <= length");
  double head = 0.0;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += lambdas[static_cast<std::size_t>(i)];
    if (i < k) head += lambdas[static_cast<std::size_t>(i)];
  }
  return head / total;
}

GaussianModes gaussian_modes(const KlExpansion2D& expansion, std::span<const Point> nodes, double g0, int L) {
  if (L < 0 || static_cast<std::size_t>(L) > expansion.pairs.size())
    throw std::invalid_argument("gaussian_modes: requested more modes than the expansion holds");
  GaussianModes g;
  g.dimension = L;
  g.num_nodes = nodes.size();
  g.values.assign(static_cast<std::size_t>(L + 1) * nodes.size(), 0.0);
  std::fill_n(g.values.begin(), nodes.size(), g0);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const Point shifted{nodes[n][0] - 0.5, nodes[n][1] - 0.5};
    if (std::abs(shifted[0]) > expansion.a + kDomainTol || std::abs(shifted[1]) > expansion.a + kDomainTol)
      throw std::out_of_range("gaussian_modes: node " + std::to_string(n) + " lies outside the kernel domain");
    for (int j = 1; j <= L; ++j) {
      const double lam = expansion.pairs[static_cast<std::size_t>(j - 1)].lambda;
      g.values[static_cast<std::size_t>(j) * nodes.size() + n] = std::sqrt(lam) * eigenfunction_2d(expansion, j, shifted);
    }
  }
  return g;
}

void write_report(std::ostream& out, const KlExpansion2D& expansion, int rows) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::fixed << std::setprecision(4);
  out << "# a=" << expansion.a << " b=" << expansion.b << " sigma2=" << expansion.sigma2 << "\n";
  out << "# 1D eigenpairs\n";
  out << std::setw(6) << "i" << std::setw(12) << "omega" << std::setw(12) << "lambda1d" << '\n';
  auto pairs_1d = expansion.pairs_1d;
  if (pairs_1d.size() < static_cast<std::size_t>(rows)) pairs_1d = eigen_1d(expansion.a, expansion.b, 1.0, rows);
  for (int i = 0; i < rows; ++i)
    out << std::setw(6) << i + 1 << std::setw(12) << pairs_1d[i].omega << std::setw(12)
        << expansion.sigma2 * pairs_1d[i].lambda << '\n';
  out << "# 2D eigenvalues\n";
  out << std::setw(6) << "n" << std::setw(6) << "ix" << std::setw(6) << "iy" << std::setw(12) << "lambda2d" << '\n';
  const auto n2 = std::min<std::size_t>(static_cast<std::size_t>(rows), expansion.pairs.size());
  for (std::size_t n = 0; n < n2; ++n)
    out << std::setw(6) << n + 1 << std::setw(6) << expansion.pairs[n].ix << std::setw(6) << expansion.pairs[n].iy
        << std::setw(12) << expansion.pairs[n].lambda << '\n';
  out.flags(flags);
  out.precision(prec);
}

} // namespace ssfem::kle
