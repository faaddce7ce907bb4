#include "gsmi/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsmi {

void check_strength(double p) {
  if (!(p >= 0.0 && p <= 0.5))
    throw std::invalid_argument("channel strength " + std::to_string(p) +
                                " outside [0, 1/2]");
}

ChannelSpec::ChannelSpec(Axis axis_, double strength_, std::vector<int> sites_)
    : axis(axis_), strength(strength_), sites(std::move(sites_)) {
  check_strength(strength);
  for (int s : sites)
    if (s < 0)
      throw std::invalid_argument("negative site index in channel");
}

ChannelSpec ChannelSpec::uniform(Axis axis, double strength, int chain_sites) {
  return window(axis, strength, 0, chain_sites);
}

ChannelSpec ChannelSpec::window(Axis axis, double strength, int first, int count) {
  return ChannelSpec(axis, strength, site_range(first, count));
}

DenseDensityMatrix density_matrix(const StateVector &state) { return state * state.adjoint(); }

DenseDensityMatrix conjugate_by_pauli(const DenseDensityMatrix &rho, Axis axis, int site) {
  // M rho M^dagger = (M (M rho)^dagger)^dagger; apply_pauli acts on columns.
  DenseDensityMatrix left(rho.rows(), rho.cols());
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    left.col(c) = apply_pauli(rho.col(c), axis, site);
  DenseDensityMatrix left_adj = left.adjoint();
  DenseDensityMatrix out(rho.rows(), rho.cols());
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    out.col(c) = apply_pauli(left_adj.col(c), axis, site);
  return out.adjoint();
}

DenseDensityMatrix apply_channel_dense(const DenseDensityMatrix &rho, const ChannelSpec &spec) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix is not square");
  const int sites = sites_for_dimension(static_cast<std::size_t>(rho.rows()));
  for (int s : spec.sites)
    if (s >= sites)
      throw std::out_of_range("channel site " + std::to_string(s) + " outside chain of " +
                              std::to_string(sites) + " sites");
  DenseDensityMatrix out = rho;
  if (spec.strength == 0.0)
    return out;
  for (int s : spec.sites)
    out = (1.0 - spec.strength) * out + spec.strength * conjugate_by_pauli(out, spec.axis, s);
  return out;
}

double dephasing_factor(double p, int differing_sites) {
  check_strength(p);
  if (differing_sites < 0)
    throw std::invalid_argument("negative differing-site count");
  if (differing_sites == 0)
    return 1.0;
  if (p == 0.5)
    return 0.0;
  return std::pow(1.0 - 2.0 * p, differing_sites);
}

DenseDensityMatrix y_decohere_dense(const DenseDensityMatrix &rho, double p_y) {
  const int sites = sites_for_dimension(static_cast<std::size_t>(rho.rows()));
  return apply_channel_dense(rho, ChannelSpec::uniform(Axis::Y, p_y, sites));
}

} // namespace gsmi
