#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "gsmi/doubled.hpp"
#include "gsmi/spin.hpp"

namespace gsmi {

/// Marginal outcome probabilities p[a] of a product-basis measurement.
using MarginalDistribution = Eigen::VectorXd;

/// A pure state whose amplitudes are already expressed in the product
/// eigenbasis of `axis`, so that the dephasing channel is diagonal in labels.
struct BasisState {
  StateVector amplitudes;
  Axis axis = Axis::Z;
};

BasisState to_measurement_basis(const StateVector &state, Axis axis);

MarginalDistribution marginal_probabilities(const StateVector &state, const Bipartition &part,
                                            Axis axis, Region region = Region::A);
MarginalDistribution marginal_probabilities(const BasisState &state, const Bipartition &part,
                                            Region region = Region::A);

/// -log sum p^2.
double renyi2_shannon_entropy(const MarginalDistribution &p);
double renyi2_shannon_entropy(const StateVector &state, const Bipartition &part, Axis axis,
                              Region region = Region::A);

/// Renyi-2 entanglement entropy -log sum s_k^4.
double renyi2_ee(const StateVector &state, const Bipartition &part);

enum class PurityAlgorithm { Auto, DenseGram, LowRank, Rank1Full };

PurityAlgorithm parse_algorithm(std::string_view text);

/// Largest region handled by the Gram-matrix path.
inline constexpr int kMaxDenseGramSites = 13;

/// Rank1Full for the whole chain; otherwise DenseGram when the region is no
/// larger than its complement (and at most 13 sites), else LowRank.
PurityAlgorithm select_algorithm(const Bipartition &part, Region region);

/// Purity of Tr_rest E[psi psi^dagger] for an n-site dephased region as a
/// polynomial in mu = (1 - 2 p_m)^2, stored in one of two nonnegative forms:
///
///   Distance:  P(mu) = sum_w h[w] mu^w,
///              h[w] = sum over label pairs at Hamming distance w of |rho(a, a')|^2;
///   Spectral:  P(mu) = sum_t g[t] (1 + mu)^(n - t) (1 - mu)^t,
///              g[t] = Walsh-Hadamard power at weight t, scaled by 2^-n.
///
/// Both are the per-site kernel [[1, mu], [mu, 1]] contracted against the
/// reduced state, grouped so every p_m of a sweep costs O(n).
class DephasingProfile {
public:
  enum class Kind { Distance, Spectral };

  DephasingProfile(Kind kind, std::vector<double> weights);

  Kind kind() const { return kind_; }
  int sites() const { return static_cast<int>(weights_.size()) - 1; }
  const std::vector<double> &weights() const { return weights_; }

  double purity(double p_m) const;
  /// -log purity; throws NumericError if the purity is not positive.
  double entropy(double p_m) const;

private:
  Kind kind_;
  std::vector<double> weights_;
};

DephasingProfile dephasing_profile(const BasisState &state, const Bipartition &part,
                                   Region region,
                                   PurityAlgorithm algorithm = PurityAlgorithm::Auto);

/// Generalized Renyi-2 Shannon entropy S_{region,M}(p_m) of a pure state,
/// computed without forming any density matrix.
double r2gse_pure(const StateVector &state, const Bipartition &part, Axis axis, double p_m,
                  PurityAlgorithm algorithm = PurityAlgorithm::Auto, Region region = Region::A);

/// One point of the generalized mutual information, entropies in nats.
struct MiPoint {
  int sites = 0;
  int size_a = 0;
  Axis axis = Axis::Z;
  double p_m = 0.0;
  double p_y = 0.0;
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double i2 = 0.0;
};

MiPoint make_mi_point(const Bipartition &part, Axis axis, double p_m, double p_y, double s_a,
                      double s_b, double s_ab);

MiPoint r2gsmi(const StateVector &state, const Bipartition &part, Axis axis, double p_m);
/// Mixed input; `p_y` is only recorded in the result.
MiPoint r2gsmi(const SuperVector &sv, const Bipartition &part, Axis axis, double p_m,
               double p_y = 0.0);

/// All p_m values for one bipartition; the expensive work is shared.
/// `algorithm` applies to the A and B entropies; the whole chain always
/// uses Rank1Full.
std::vector<MiPoint> r2gsmi_sweep(const BasisState &state, const Bipartition &part,
                                  std::span<const double> p_m,
                                  PurityAlgorithm algorithm = PurityAlgorithm::Auto);
std::vector<MiPoint> r2gsmi_sweep(const SuperVector &sv, const Bipartition &part, Axis axis,
                                  std::span<const double> p_m, double p_y = 0.0);

/// Renyi-2 Shannon mutual information from marginal distributions.
double r2smi(const StateVector &state, const Bipartition &part, Axis axis);

/// Renyi-n central charge implied by the Ising conjecture: c for n = 1,
/// c n / (n - 1) for n > 1.
double conjectured_cn(int n, double c);

} // namespace gsmi
