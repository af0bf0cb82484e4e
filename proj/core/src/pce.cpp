#include "ssfem/pce.hpp"

#include "ssfem/errors.hpp"
#include "ssfem/sparsegrid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace ssfem::pce {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// All indices of length `dimension` with total degree exactly `degree`,
// in descending lexicographic order.
void enumerate_degree(int dimension, int degree, MultiIndex& current, int pos,
                      std::vector<MultiIndex>& out) {
  if (pos == dimension - 1) {
    current[pos] = degree;
    out.push_back(current);
    return;
  }
  for (int m = degree; m >= 0; --m) {
    current[pos] = m;
    enumerate_degree(dimension, degree - m, current, pos + 1, out);
  }
  current[pos] = 0;
}

std::vector<MultiIndex> graded_terms(int dimension, int order) {
  std::vector<MultiIndex> terms;
  terms.emplace_back(dimension, 0);
  for (int degree = 1; degree <= order; ++degree) {
    std::vector<MultiIndex> block;
    MultiIndex scratch(dimension, 0);
    enumerate_degree(dimension, degree, scratch, 0, block);

    std::vector<MultiIndex> pure;
    std::vector<MultiIndex> mixed;
    for (auto& m : block) {
      const auto active = std::count_if(m.begin(), m.end(), [](int v) { return v > 0; });
      (active == 1 ? pure : mixed).push_back(std::move(m));
    }
    // Descending lex puts (d,0,..) first, so pure powers come out ordered by dimension.
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < pure.size() || b < mixed.size()) {
      if (a < pure.size()) terms.push_back(std::move(pure[a++]));
      if (b < mixed.size()) terms.push_back(std::move(mixed[b++]));
    }
  }
  return terms;
}

double variance_of(const MultiIndex& m) {
  double v = 1.0;
  for (int o : m) v *= factorial(o);
  return v;
}

} // namespace

int total_degree(const MultiIndex& index) {
  return std::accumulate(index.begin(), index.end(), 0);
}

std::size_t term_count(int dimension, int order) {
  if (dimension < 1 || order < 0) throw std::invalid_argument("term_count: need L >= 1 and p >= 0");
  // C(L+p, p) computed incrementally; each partial product is an integer.
  std::size_t n = 1;
  for (int i = 1; i <= order; ++i) n = n * static_cast<std::size_t>(dimension + i) / static_cast<std::size_t>(i);
  return n;
}

PceBasis::PceBasis(int dimension, int order) : dimension_(dimension), order_(order) {
  if (dimension < 1) throw std::invalid_argument("PceBasis: stochastic dimension must be >= 1");
  if (order < 0) throw std::invalid_argument("PceBasis: order must be >= 0");
  terms_ = graded_terms(dimension, order);
  variances_.reserve(terms_.size());
  for (const auto& t : terms_) variances_.push_back(variance_of(t));
}

PceBasis::PceBasis(int dimension, int order, std::vector<MultiIndex> terms)
    : dimension_(dimension), order_(order), terms_(std::move(terms)) {
  if (dimension < 1) throw std::invalid_argument("PceBasis: stochastic dimension must be >= 1");
  if (order < 0) throw std::invalid_argument("PceBasis: order must be >= 0");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.size()) != dimension)
      throw std::invalid_argument("PceBasis: multi-index length differs from dimension");
    if (std::any_of(t.begin(), t.end(), [](int v) { return v < 0; }))
      throw std::invalid_argument("PceBasis: negative order in multi-index");
    if (total_degree(t) > order) throw std::invalid_argument("PceBasis: multi-index exceeds basis order");
  }
  variances_.reserve(terms_.size());
  for (const auto& t : terms_) variances_.push_back(variance_of(t));
}

const MultiIndex& PceBasis::term(std::size_t j) const {
  if (j >= terms_.size()) throw std::out_of_range("PceBasis: term index " + std::to_string(j) + " out of range");
  return terms_[j];
}

double PceBasis::variance(std::size_t j) const {
  if (j >= variances_.size())
    throw std::out_of_range("PceBasis: term index " + std::to_string(j) + " out of range");
  return variances_[j];
}

double PceBasis::eval(std::size_t j, std::span<const double> xi) const {
  const auto& m = term(j);
  if (xi.size() != static_cast<std::size_t>(dimension_))
    throw std::invalid_argument("PceBasis::eval: germ length differs from basis dimension");
  double v = 1.0;
  for (std::size_t d = 0; d < m.size(); ++d) v *= hermite_1d(m[d], xi[d]);
  return v;
}

std::vector<double> PceBasis::eval_all(std::span<const double> xi) const {
  if (xi.size() != static_cast<std::size_t>(dimension_))
    throw std::invalid_argument("PceBasis::eval_all: germ length differs from basis dimension");
  const auto stride = static_cast<std::size_t>(order_ + 1);
  std::vector<double> table(xi.size() * stride);
  for (std::size_t d = 0; d < xi.size(); ++d) {
    double* h = table.data() + d * stride;
    h[0] = 1.0;
    if (order_ >= 1) h[1] = xi[d];
    for (int n = 2; n <= order_; ++n) h[n] = xi[d] * h[n - 1] - (n - 1) * h[n - 2];
  }
  std::vector<double> out(terms_.size());
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    double v = 1.0;
    for (std::size_t d = 0; d < xi.size(); ++d) v *= table[d * stride + static_cast<std::size_t>(terms_[j][d])];
    out[j] = v;
  }
  return out;
}

PceBasis build_basis(int dimension, int order) { return PceBasis(dimension, order); }

double hermite_1d(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_1d: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 2; k <= n; ++k) {
    const double next = x * cur - (k - 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double eval_psi(const PceBasis& basis, std::size_t j, std::span<const double> xi) { return basis.eval(j, xi); }

double psi_variance(const PceBasis& basis, std::size_t j) { return basis.variance(j); }

double triple_moment_1d(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("triple_moment_1d: negative degree");
  const int s = a + b + c;
  if (s % 2 != 0) return 0.0;
  const auto rule = sparsegrid::gauss_hermite((s + 1) / 2 + 1);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double x = rule.nodes[q];
    sum += rule.weights[q] * hermite_1d(a, x) * hermite_1d(b, x) * hermite_1d(c, x);
  }
  return sum;
}

CijkTensor::CijkTensor(std::size_t in_size, std::size_t out_size, std::vector<CijkEntry> entries)
    : in_size_(in_size), out_size_(out_size), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const CijkEntry& x, const CijkEntry& y) {
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
  });
  for (const auto& e : entries_) {
    if (e.i >= in_size_ || e.j >= out_size_ || e.k >= out_size_)
      throw std::out_of_range("CijkTensor: entry index outside tensor shape");
    if (!std::isfinite(e.value)) throw std::invalid_argument("CijkTensor: non-finite entry");
  }
}

double CijkTensor::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  const CijkEntry key{i, j, k, 0.0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, [](const CijkEntry& x, const CijkEntry& y) {
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
  });
  if (it != entries_.end() && it->i == i && it->j == j && it->k == k) return it->value;
  return 0.0;
}

CijkTensor build_cijk(const PceBasis& basis_in, const PceBasis& basis_out) {
  if (basis_in.dimension() != basis_out.dimension())
    throw std::invalid_argument("build_cijk: input and output bases have different stochastic dimensions");

  // Memoized 1D moments over the orders actually present.
  const int max_in = basis_in.order();
  const int max_out = basis_out.order();
  const auto n_in = static_cast<std::size_t>(max_in + 1);
  const auto n_out = static_cast<std::size_t>(max_out + 1);
  std::vector<double> moments(n_in * n_out * n_out);
  for (int a = 0; a <= max_in; ++a)
    for (int b = 0; b <= max_out; ++b)
      for (int c = 0; c <= max_out; ++c)
        moments[(static_cast<std::size_t>(a) * n_out + static_cast<std::size_t>(b)) * n_out + static_cast<std::size_t>(c)] =
            triple_moment_1d(a, b, c);

  const auto L = static_cast<std::size_t>(basis_in.dimension());
  std::vector<CijkEntry> entries;
  for (std::size_t i = 0; i < basis_in.size(); ++i) {
    const auto& mi = basis_in.term(i);
    for (std::size_t j = 0; j < basis_out.size(); ++j) {
      const auto& mj = basis_out.term(j);
      for (std::size_t k = 0; k < basis_out.size(); ++k) {
        const auto& mk = basis_out.term(k);
        double v = 1.0;
        for (std::size_t d = 0; d < L && v != 0.0; ++d)
          v *= moments[(static_cast<std::size_t>(mi[d]) * n_out + static_cast<std::size_t>(mj[d])) * n_out +
                       static_cast<std::size_t>(mk[d])];
        if (std::abs(v) > CijkTensor::drop_tolerance) entries.push_back({i, j, k, v});
      }
    }
  }
  return CijkTensor(basis_in.size(), basis_out.size(), std::move(entries));
}

void write_cijk(std::ostream& out, const CijkTensor& cijk) {
  out << std::setprecision(15);
  for (const auto& e : cijk.entries()) out << e.i << ' ' << e.j << ' ' << e.k << ' ' << e.value << '\n';
}

void write_cijk(const std::string& path, const CijkTensor& cijk) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_cijk(out, cijk);
  if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace ssfem::pce
