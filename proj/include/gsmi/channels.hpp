#pragma once

#include <vector>

#include "gsmi/spin.hpp"

namespace gsmi {

/// Explicit 2^L x 2^L density matrix. Only used at oracle scale.
using DenseDensityMatrix = Eigen::MatrixXcd;

/// Product of single-site channels rho -> (1-p) rho + p M_j rho M_j over
/// `sites`, with Kraus operators sqrt(1-p) I and sqrt(p) M.
struct ChannelSpec {
  Axis axis = Axis::Z;
  double strength = 0.0;
  std::vector<int> sites;

  ChannelSpec(Axis axis, double strength, std::vector<int> sites);

  /// Same channel on every site of an L-site chain.
  static ChannelSpec uniform(Axis axis, double strength, int chain_sites);
  /// Same channel on sites [first, first + count).
  static ChannelSpec window(Axis axis, double strength, int first, int count);
};

/// Throws unless 0 <= p <= 1/2.
void check_strength(double p);

DenseDensityMatrix density_matrix(const StateVector &state);

/// Applies `axis` Pauli at `site` from the left and its adjoint from the right.
DenseDensityMatrix conjugate_by_pauli(const DenseDensityMatrix &rho, Axis axis, int site);

DenseDensityMatrix apply_channel_dense(const DenseDensityMatrix &rho, const ChannelSpec &spec);

/// (1 - 2p)^differing_sites: the factor multiplying a density-matrix element
/// (in the eigenbasis of the dephasing axis) whose row and column labels
/// differ on `differing_sites` dephased sites.
double dephasing_factor(double p, int differing_sites);

/// Y channel of strength p_y on every site.
DenseDensityMatrix y_decohere_dense(const DenseDensityMatrix &rho, double p_y);

} // namespace gsmi
