#pragma once

#include <vector>

#include "gsmi/channels.hpp"

namespace gsmi {

/// Choi image |rho>> = sum_k |k>_u (x) rho|k>_l in the doubled space, without
/// the 1/sqrt(dim) prefactor, so <<A|B>> = Tr[A^dagger B].
///
/// Label layout: the ket (l) configuration m occupies the low L bits and the
/// bra (u) configuration k the high L bits, so component (k, m) = rho(m, k)
/// sits at m + (k << L). This is exactly the column-major storage of rho.
/// Site j therefore owns bit j (l copy) and bit L + j (u copy).
class SuperVector {
public:
  SuperVector() = default;
  SuperVector(int sites, Eigen::VectorXcd data);

  int sites() const { return sites_; }
  const Eigen::VectorXcd &data() const { return data_; }
  Eigen::VectorXcd &data() { return data_; }

  double squared_norm() const { return data_.squaredNorm(); }

private:
  int sites_ = 0;
  Eigen::VectorXcd data_;
};

/// Doubled-space size cap (4^12 labels).
inline constexpr int kMaxSupervectorSites = 12;

SuperVector vectorize(const DenseDensityMatrix &rho);
DenseDensityMatrix devectorize(const SuperVector &sv);

/// conj(psi)_u (x) psi_l: the Choi image of |psi><psi| without forming it.
SuperVector vectorize_pure(const StateVector &state);

/// <<a|b>> = Tr[a^dagger b].
Complex inner(const SuperVector &a, const SuperVector &b);

/// A product operator on the doubled space: the same 4x4 factor on the
/// (u, l) pair of every listed site. Local index is 2 u + l.
struct DoubledOperator {
  Eigen::Matrix4cd factor;
  std::vector<int> sites;
};

/// Kron(a_u, b_l) in the local 2 u + l ordering.
Eigen::Matrix4cd doubled_factor(const Eigen::Matrix2cd &on_u, const Eigen::Matrix2cd &on_l);

/// Lift of a Kraus channel: per site (1-p) I(x)I + p M*_u (x) M_l.
DoubledOperator lift_channel(const ChannelSpec &spec);

/// Per-site maximal depolarization (1/4)[II + XX - YY + ZZ].
Eigen::Matrix4cd depolarizer();

SuperVector apply(const DoubledOperator &op, const SuperVector &sv);
void apply_in_place(const DoubledOperator &op, SuperVector &sv);

/// Applies the depolarizer on `sites`; de-vectorizes to (I/d) (x) Tr_sites[rho].
SuperVector depolarize_subsystem(const SuperVector &sv, const std::vector<int> &sites);

/// Y decoherence of strength p_y on every site.
SuperVector y_decohere(const SuperVector &sv, double p_y);

/// Which subsystem keeps its degrees of freedom (and receives the
/// measurement channel) when computing a generalized entropy.
enum class Region { A, B, Whole };

std::vector<int> region_sites(const Bipartition &part, Region region);
std::vector<int> complement_sites(const Bipartition &part, Region region);

/// Generalized Renyi-2 entropy of `region`: dephase the region with the
/// lifted channel, depolarize the rest, and return -log(d_rest ||.||^2).
double r2gse_supervector(const SuperVector &sv, const Bipartition &part, Axis axis, double p_m,
                         Region region = Region::A);

} // namespace gsmi
