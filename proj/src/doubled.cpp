#include "gsmi/doubled.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gsmi/error.hpp"

namespace gsmi {

SuperVector::SuperVector(int sites, Eigen::VectorXcd data) : sites_(sites), data_(std::move(data)) {
  if (sites < 1 || sites > kMaxSupervectorSites)
    throw std::invalid_argument(
        "doubled-space path supports 1.." + std::to_string(kMaxSupervectorSites) +
        " sites (got " + std::to_string(sites) + "); use the pure-state path for larger chains");
  if (static_cast<std::size_t>(data_.size()) != configuration_count(2 * sites))
    throw std::invalid_argument("supervector length is not 4^L");
}

SuperVector vectorize(const DenseDensityMatrix &rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix is not square");
  const int sites = sites_for_dimension(static_cast<std::size_t>(rho.rows()));
  return SuperVector(sites, Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size()));
}

DenseDensityMatrix devectorize(const SuperVector &sv) {
  const auto dim = static_cast<Eigen::Index>(configuration_count(sv.sites()));
  return Eigen::Map<const Eigen::MatrixXcd>(sv.data().data(), dim, dim);
}

SuperVector vectorize_pure(const StateVector &state) {
  const int sites = site_count(state);
  const Eigen::Index dim = state.size();
  Eigen::VectorXcd data(dim * dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    data.segment(k * dim, dim) = std::conj(state(k)) * state;
  return SuperVector(sites, std::move(data));
}

Complex inner(const SuperVector &a, const SuperVector &b) {
  if (a.sites() != b.sites())
    throw std::invalid_argument("supervectors of different chain lengths");
  return a.data().dot(b.data());
}

Eigen::Matrix4cd doubled_factor(const Eigen::Matrix2cd &on_u, const Eigen::Matrix2cd &on_l) {
  Eigen::Matrix4cd out;
  for (int u = 0; u < 2; ++u)
    for (int l = 0; l < 2; ++l)
      for (int u2 = 0; u2 < 2; ++u2)
        for (int l2 = 0; l2 < 2; ++l2)
          out(2 * u + l, 2 * u2 + l2) = on_u(u, u2) * on_l(l, l2);
  return out;
}

DoubledOperator lift_channel(const ChannelSpec &spec) {
  const Eigen::Matrix2cd m = pauli_matrix(spec.axis);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  DoubledOperator op;
  op.factor = (1.0 - spec.strength) * doubled_factor(id, id) +
              spec.strength * doubled_factor(m.conjugate(), m);
  op.sites = spec.sites;
  return op;
}

Eigen::Matrix4cd depolarizer() {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd x = pauli_matrix(Axis::X);
  const Eigen::Matrix2cd y = pauli_matrix(Axis::Y);
  const Eigen::Matrix2cd z = pauli_matrix(Axis::Z);
  return 0.25 * (doubled_factor(id, id) + doubled_factor(x, x) - doubled_factor(y, y) +
                 doubled_factor(z, z));
}

namespace {

inline std::size_t insert_zero_bit(std::size_t value, int position) {
  const std::size_t low = value & ((std::size_t{1} << position) - 1);
  return ((value >> position) << (position + 1)) | low;
}

struct SparseEntry {
  int row;
  int col;
  Complex value;
};

void apply_site_factor(Eigen::VectorXcd &v, int sites, int site,
                       const std::vector<SparseEntry> &entries) {
  const std::size_t bit_l = std::size_t{1} << site;
  const std::size_t bit_u = std::size_t{1} << (sites + site);
  const std::array<std::size_t, 4> offset{0, bit_l, bit_u, bit_l | bit_u};
  const std::size_t groups = static_cast<std::size_t>(v.size()) / 4;
  std::array<Complex, 4> in{};
  std::array<Complex, 4> out{};
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t base = insert_zero_bit(insert_zero_bit(g, site), sites + site);
    for (int t = 0; t < 4; ++t) {
      in[t] = v(static_cast<Eigen::Index>(base + offset[t]));
      out[t] = 0.0;
    }
    for (const auto &e : entries)
      out[e.row] += e.value * in[e.col];
    for (int t = 0; t < 4; ++t)
      v(static_cast<Eigen::Index>(base + offset[t])) = out[t];
  }
}

} // namespace

void apply_in_place(const DoubledOperator &op, SuperVector &sv) {
  std::vector<SparseEntry> entries;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (op.factor(r, c) != Complex{0.0, 0.0})
        entries.push_back({r, c, op.factor(r, c)});
  const bool identity = op.factor.isIdentity(0.0);
  for (int s : op.sites) {
    if (s < 0 || s >= sv.sites())
      throw std::out_of_range("doubled operator site " + std::to_string(s) +
                              " outside chain of " + std::to_string(sv.sites()) + " sites");
    if (!identity)
      apply_site_factor(sv.data(), sv.sites(), s, entries);
  }
}

SuperVector apply(const DoubledOperator &op, const SuperVector &sv) {
  SuperVector out = sv;
  apply_in_place(op, out);
  return out;
}

SuperVector depolarize_subsystem(const SuperVector &sv, const std::vector<int> &sites) {
  return apply(DoubledOperator{depolarizer(), sites}, sv);
}

SuperVector y_decohere(const SuperVector &sv, double p_y) {
  return apply(lift_channel(ChannelSpec::uniform(Axis::Y, p_y, sv.sites())), sv);
}

std::vector<int> region_sites(const Bipartition &part, Region region) {
  switch (region) {
  case Region::A:
    return site_range(0, part.size_a);
  case Region::B:
    return site_range(part.size_a, part.size_b());
  case Region::Whole:
    break;
  }
  return site_range(0, part.sites);
}

std::vector<int> complement_sites(const Bipartition &part, Region region) {
  switch (region) {
  case Region::A:
    return region_sites(part, Region::B);
  case Region::B:
    return region_sites(part, Region::A);
  case Region::Whole:
    break;
  }
  return {};
}

double r2gse_supervector(const SuperVector &sv, const Bipartition &part, Axis axis, double p_m,
                         Region region) {
  if (sv.sites() != part.sites)
    throw std::invalid_argument("supervector and bipartition disagree on L");
  check_strength(p_m);
  SuperVector work = sv;
  apply_in_place(lift_channel(ChannelSpec(axis, p_m, region_sites(part, region))), work);
  const auto rest = complement_sites(part, region);
  apply_in_place(DoubledOperator{depolarizer(), rest}, work);
  const double purity = std::ldexp(work.squared_norm(), static_cast<int>(rest.size()));
  if (!(purity > 0.0) || !std::isfinite(purity))
    throw NumericError("supervector purity " + std::to_string(purity) + " is not positive");
  return -std::log(purity);
}

} // namespace gsmi
