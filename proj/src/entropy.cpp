#include "gsmi/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gsmi/error.hpp"

namespace gsmi {

namespace {

double checked_log_inverse(double purity) {
  if (!(purity > 0.0) || !std::isfinite(purity))
    throw NumericError("purity " + std::to_string(purity) + " is not positive");
  return -std::log(purity);
}

void check_state(const StateVector &amplitudes, const Bipartition &part) {
  if (site_count(amplitudes) != part.sites)
    throw std::invalid_argument("state has " + std::to_string(site_count(amplitudes)) +
                                " sites, bipartition expects " + std::to_string(part.sites));
}

int region_size(const Bipartition &part, Region region) {
  switch (region) {
  case Region::A:
    return part.size_a;
  case Region::B:
    return part.size_b();
  case Region::Whole:
    break;
  }
  return part.sites;
}

// Rows indexed by the kept region's configurations.
Eigen::MatrixXcd oriented_coefficients(const BasisState &state, const Bipartition &part,
                                       Region region) {
  CoefficientMatrix c = coefficient_matrix(state.amplitudes, part);
  if (region == Region::B)
    return c.transpose();
  return c;
}

std::vector<double> bin_by_weight(const Eigen::VectorXd &values, int sites) {
  std::vector<double> bins(static_cast<std::size_t>(sites) + 1, 0.0);
  for (Eigen::Index s = 0; s < values.size(); ++s)
    bins[std::popcount(static_cast<std::uint64_t>(s))] += values(s);
  return bins;
}

DephasingProfile dense_gram_profile(const Eigen::MatrixXcd &c, int sites) {
  const Eigen::Index d = c.rows();
  const Eigen::Index block = std::clamp<Eigen::Index>((Eigen::Index{1} << 22) / d, 1, d);
  std::vector<double> h(static_cast<std::size_t>(sites) + 1, 0.0);
  std::vector<double> row(h.size());
  for (Eigen::Index r0 = 0; r0 < d; r0 += block) {
    const Eigen::Index rows = std::min(block, d - r0);
    const Eigen::MatrixXcd gram = c.middleRows(r0, rows) * c.adjoint();
    for (Eigen::Index i = 0; i < rows; ++i) {
      std::fill(row.begin(), row.end(), 0.0);
      const auto a = static_cast<std::uint64_t>(r0 + i);
      for (Eigen::Index a2 = 0; a2 < d; ++a2)
        row[std::popcount(a ^ static_cast<std::uint64_t>(a2))] += std::norm(gram(i, a2));
      for (std::size_t w = 0; w < h.size(); ++w)
        h[w] += row[w];
    }
  }
  return DephasingProfile(DephasingProfile::Kind::Distance, std::move(h));
}

DephasingProfile low_rank_profile(const Eigen::MatrixXcd &c, int sites) {
  const SchmidtData sd = schmidt(c);
  const Eigen::Index chi = sd.rank;
  const Eigen::VectorXd s2 = sd.values.cwiseAbs2();
  Eigen::VectorXd power = Eigen::VectorXd::Zero(c.rows());
  for (Eigen::Index k = 0; k < chi; ++k) {
    // w_kl[a] = U[a,k] conj(U[a,l]) for l >= k; the (l, k) term is the conjugate.
    Eigen::MatrixXcd w = sd.left.rightCols(chi - k).conjugate();
    w.array().colwise() *= sd.left.col(k).array();
    walsh_hadamard(w);
    Eigen::VectorXd weight = s2(k) * s2.tail(chi - k);
    weight.tail(chi - k - 1) *= 2.0;
    power.noalias() += w.cwiseAbs2() * weight;
  }
  auto g = bin_by_weight(power, sites);
  for (double &x : g)
    x = std::ldexp(x, -sites);
  return DephasingProfile(DephasingProfile::Kind::Spectral, std::move(g));
}

DephasingProfile rank1_full_profile(const StateVector &amplitudes, int sites) {
  Eigen::VectorXd q = amplitudes.cwiseAbs2();
  walsh_hadamard(q);
  auto g = bin_by_weight(q.cwiseAbs2(), sites);
  for (double &x : g)
    x = std::ldexp(x, -sites);
  return DephasingProfile(DephasingProfile::Kind::Spectral, std::move(g));
}

} // namespace

BasisState to_measurement_basis(const StateVector &state, Axis axis) {
  return BasisState{rotate_to_basis(state, axis), axis};
}

MarginalDistribution marginal_probabilities(const BasisState &state, const Bipartition &part,
                                            Region region) {
  check_state(state.amplitudes, part);
  if (region == Region::Whole)
    return state.amplitudes.cwiseAbs2();
  const CoefficientMatrix c = coefficient_matrix(state.amplitudes, part);
  if (region == Region::A)
    return c.rowwise().squaredNorm();
  return c.colwise().squaredNorm().transpose();
}

MarginalDistribution marginal_probabilities(const StateVector &state, const Bipartition &part,
                                            Axis axis, Region region) {
  return marginal_probabilities(to_measurement_basis(state, axis), part, region);
}

double renyi2_shannon_entropy(const MarginalDistribution &p) {
  return checked_log_inverse(p.squaredNorm());
}

double renyi2_shannon_entropy(const StateVector &state, const Bipartition &part, Axis axis,
                              Region region) {
  return renyi2_shannon_entropy(marginal_probabilities(state, part, axis, region));
}

double renyi2_ee(const StateVector &state, const Bipartition &part) {
  const SchmidtData sd = schmidt(state, part);
  return checked_log_inverse(sd.values.array().square().square().sum());
}

PurityAlgorithm parse_algorithm(std::string_view text) {
  if (text == "auto")
    return PurityAlgorithm::Auto;
  if (text == "dense_gram")
    return PurityAlgorithm::DenseGram;
  if (text == "low_rank")
    return PurityAlgorithm::LowRank;
  if (text == "rank1_full")
    return PurityAlgorithm::Rank1Full;
  throw std::invalid_argument("unknown purity algorithm '" + std::string(text) + "'");
}

PurityAlgorithm select_algorithm(const Bipartition &part, Region region) {
  if (region == Region::Whole)
    return PurityAlgorithm::Rank1Full;
  const int n = region_size(part, region);
  if (n <= kMaxDenseGramSites && n <= part.sites - n)
    return PurityAlgorithm::DenseGram;
  return PurityAlgorithm::LowRank;
}

DephasingProfile::DephasingProfile(Kind kind, std::vector<double> weights)
    : kind_(kind), weights_(std::move(weights)) {
  if (weights_.empty())
    throw std::invalid_argument("empty dephasing profile");
}

double DephasingProfile::purity(double p_m) const {
  check_strength(p_m);
  const int n = sites();
  if (p_m == 0.5) {
    // lambda = 0: only the diagonal survives.
    if (kind_ == Kind::Distance)
      return weights_[0];
    double sum = 0.0;
    for (double g : weights_)
      sum += g;
    return sum;
  }
  const double lambda = 1.0 - 2.0 * p_m;
  const double mu = lambda * lambda;
  if (kind_ == Kind::Distance) {
    double acc = 0.0;
    for (int w = n; w >= 0; --w)
      acc = acc * mu + weights_[static_cast<std::size_t>(w)];
    return acc;
  }
  const double plus = 1.0 + mu;
  const double minus = 1.0 - mu;
  double sum = 0.0;
  for (int t = 0; t <= n; ++t)
    sum += weights_[static_cast<std::size_t>(t)] * std::pow(plus, n - t) * std::pow(minus, t);
  return sum;
}

double DephasingProfile::entropy(double p_m) const { return checked_log_inverse(purity(p_m)); }

DephasingProfile dephasing_profile(const BasisState &state, const Bipartition &part,
                                   Region region, PurityAlgorithm algorithm) {
  check_state(state.amplitudes, part);
  if (algorithm == PurityAlgorithm::Auto)
    algorithm = select_algorithm(part, region);
  const int n = region_size(part, region);
  switch (algorithm) {
  case PurityAlgorithm::Rank1Full:
    if (region != Region::Whole)
      throw std::invalid_argument("rank1_full requires the dephased region to be the whole chain");
    return rank1_full_profile(state.amplitudes, part.sites);
  case PurityAlgorithm::DenseGram:
    if (region == Region::Whole || n > kMaxDenseGramSites)
      throw std::invalid_argument("dense_gram requires a proper subsystem of at most " +
                                  std::to_string(kMaxDenseGramSites) + " sites");
    return dense_gram_profile(oriented_coefficients(state, part, region), n);
  case PurityAlgorithm::LowRank:
    if (region == Region::Whole)
      throw std::invalid_argument("low_rank requires a proper subsystem");
    return low_rank_profile(oriented_coefficients(state, part, region), n);
  case PurityAlgorithm::Auto:
    break;
  }
  throw std::logic_error("unresolved purity algorithm");
}

double r2gse_pure(const StateVector &state, const Bipartition &part, Axis axis, double p_m,
                  PurityAlgorithm algorithm, Region region) {
  check_strength(p_m);
  return dephasing_profile(to_measurement_basis(state, axis), part, region, algorithm)
      .entropy(p_m);
}

MiPoint make_mi_point(const Bipartition &part, Axis axis, double p_m, double p_y, double s_a,
                      double s_b, double s_ab) {
  MiPoint m;
  m.sites = part.sites;
  m.size_a = part.size_a;
  m.axis = axis;
  m.p_m = p_m;
  m.p_y = p_y;
  m.s_a = s_a;
  m.s_b = s_b;
  m.s_ab = s_ab;
  m.i2 = s_a + s_b - s_ab;
  return m;
}

std::vector<MiPoint> r2gsmi_sweep(const BasisState &state, const Bipartition &part,
                                  std::span<const double> p_m, PurityAlgorithm algorithm) {
  for (double p : p_m)
    check_strength(p);
  const auto a = dephasing_profile(state, part, Region::A, algorithm);
  const auto b = dephasing_profile(state, part, Region::B, algorithm);
  const auto whole = dephasing_profile(state, part, Region::Whole);
  std::vector<MiPoint> out;
  out.reserve(p_m.size());
  for (double p : p_m)
    out.push_back(
        make_mi_point(part, state.axis, p, 0.0, a.entropy(p), b.entropy(p), whole.entropy(p)));
  return out;
}

MiPoint r2gsmi(const StateVector &state, const Bipartition &part, Axis axis, double p_m) {
  const double grid[] = {p_m};
  return r2gsmi_sweep(to_measurement_basis(state, axis), part, grid).front();
}

MiPoint r2gsmi(const SuperVector &sv, const Bipartition &part, Axis axis, double p_m,
               double p_y) {
  return make_mi_point(part, axis, p_m, p_y, r2gse_supervector(sv, part, axis, p_m, Region::A),
                       r2gse_supervector(sv, part, axis, p_m, Region::B),
                       r2gse_supervector(sv, part, axis, p_m, Region::Whole));
}

std::vector<MiPoint> r2gsmi_sweep(const SuperVector &sv, const Bipartition &part, Axis axis,
                                  std::span<const double> p_m, double p_y) {
  if (sv.sites() != part.sites)
    throw std::invalid_argument("supervector and bipartition disagree on L");
  for (double p : p_m)
    check_strength(p);
  std::vector<std::vector<double>> entropies;
  for (Region region : {Region::A, Region::B, Region::Whole}) {
    const auto rest = complement_sites(part, region);
    const SuperVector depolarized = depolarize_subsystem(sv, rest);
    std::vector<double> column;
    for (double p : p_m) {
      const SuperVector work =
          apply(lift_channel(ChannelSpec(axis, p, region_sites(part, region))), depolarized);
      column.push_back(
          checked_log_inverse(std::ldexp(work.squared_norm(), static_cast<int>(rest.size()))));
    }
    entropies.push_back(std::move(column));
  }
  std::vector<MiPoint> out;
  for (std::size_t i = 0; i < p_m.size(); ++i)
    out.push_back(make_mi_point(part, axis, p_m[i], p_y, entropies[0][i], entropies[1][i],
                                entropies[2][i]));
  return out;
}

double r2smi(const StateVector &state, const Bipartition &part, Axis axis) {
  const BasisState basis = to_measurement_basis(state, axis);
  return renyi2_shannon_entropy(marginal_probabilities(basis, part, Region::A)) +
         renyi2_shannon_entropy(marginal_probabilities(basis, part, Region::B)) -
         renyi2_shannon_entropy(marginal_probabilities(basis, part, Region::Whole));
}

double conjectured_cn(int n, double c) {
  if (n < 1)
    throw std::invalid_argument("Renyi index must be >= 1");
  if (n == 1)
    return c;
  return c * n / (n - 1.0);
}

} // namespace gsmi
