#include "ssfem/lognormal.hpp"

#include <cmath>
#include <stdexcept>

namespace ssfem::lognormal {

StochasticField lognormal_pce(const kle::GaussianModes& modes, std::shared_ptr<const pce::PceBasis> basis) {
  if (!basis) throw std::invalid_argument("lognormal_pce: null basis");
  if (basis->dimension() != modes.dimension)
    throw std::invalid_argument("lognormal_pce: basis dimension " + std::to_string(basis->dimension()) +
                                " differs from the number of Gaussian modes " + std::to_string(modes.dimension));
  const std::size_t n_nodes = modes.num_nodes;
  const auto L = static_cast<std::size_t>(modes.dimension);
  StochasticField field(basis, n_nodes, FieldRole::InputCoefficient);

  std::vector<double> mean(n_nodes);
  const auto g0 = modes.mode(0);
  for (std::size_t n = 0; n < n_nodes; ++n) {
    double s2 = 0.0;
    for (std::size_t d = 1; d <= L; ++d) s2 += modes.mode(d)[n] * modes.mode(d)[n];
    mean[n] = std::exp(g0[n] + 0.5 * s2);
  }

  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto& m = basis->term(i);
    const double denom = basis->variance(i);
    auto row = field.row(i);
    for (std::size_t n = 0; n < n_nodes; ++n) {
      double v = mean[n];
      for (std::size_t d = 0; d < L; ++d)
        if (m[d] > 0) v *= std::pow(modes.mode(d + 1)[n], m[d]);
      row[n] = v / denom;
    }
  }
  return field;
}

void lognormal_sample(const kle::GaussianModes& modes, std::span<const double> xi, std::span<double> out) {
  if (xi.size() != static_cast<std::size_t>(modes.dimension))
    throw std::invalid_argument("lognormal_sample: germ length differs from the number of Gaussian modes");
  if (out.size() != modes.num_nodes) throw std::invalid_argument("lognormal_sample: output size mismatch");
  const auto g0 = modes.mode(0);
  for (std::size_t n = 0; n < modes.num_nodes; ++n) {
    double g = g0[n];
    for (std::size_t d = 0; d < xi.size(); ++d) g += modes.mode(d + 1)[n] * xi[d];
    out[n] = std::exp(g);
  }
}

std::vector<double> lognormal_sample(const kle::GaussianModes& modes, std::span<const double> xi) {
  std::vector<double> out(modes.num_nodes);
  lognormal_sample(modes, xi, out);
  return out;
}

} // namespace ssfem::lognormal
