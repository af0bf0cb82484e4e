#pragma once

#include "ssfem/field.hpp"
#include "ssfem/kle.hpp"

#include <memory>
#include <span>
#include <vector>

namespace ssfem::lognormal {

/**
 * PCE of l(x, xi) = exp(g_0(x) + sum_d g_d(x) xi_d).
 *
 * With l_0 = exp(g_0 + 1/2 sum_d g_d^2), each coefficient is
 *
 *     l_i(x) = l_0(x) * prod_d g_d(x)^{m_d} / m_d!
 *
 * where m is the multi-index of term i; this is <Psi_i(xi - g)> / <Psi_i^2>.
 * Throws std::invalid_argument when the basis dimension differs from the
 * number of Gaussian modes.
 */
StochasticField lognormal_pce(const kle::GaussianModes& modes, std::shared_ptr<const pce::PceBasis> basis);

/// Exact pointwise exp(g_0 + sum_d g_d xi_d) at every node.
std::vector<double> lognormal_sample(const kle::GaussianModes& modes, std::span<const double> xi);

/// Same, written into `out` (size num_nodes).
void lognormal_sample(const kle::GaussianModes& modes, std::span<const double> xi, std::span<double> out);

} // namespace ssfem::lognormal
