#include "gsmi/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsmi::oracle {

namespace {

int checked_sites(const DenseDensityMatrix &rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix is not square");
  const int sites = sites_for_dimension(static_cast<std::size_t>(rho.rows()));
  if (sites > kMaxOracleSites)
    throw std::invalid_argument("dense oracle limited to L <= " +
                                std::to_string(kMaxOracleSites) + " (got " +
                                std::to_string(sites) + ")");
  return sites;
}

} // namespace

DenseDensityMatrix partial_trace_dense(const DenseDensityMatrix &rho, const Bipartition &part,
                                       Region keep) {
  if (checked_sites(rho) != part.sites)
    throw std::invalid_argument("density matrix and bipartition disagree on L");
  if (keep == Region::Whole)
    return rho;
  const std::size_t da = part.dim_a();
  const std::size_t db = part.dim_b();
  const int shift = part.size_a;
  auto at = [&](std::size_t a, std::size_t b) { return static_cast<Eigen::Index>(a | (b << shift)); };
  if (keep == Region::A) {
    DenseDensityMatrix out = DenseDensityMatrix::Zero(da, da);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b = 0; b < db; ++b)
          out(a, a2) += rho(at(a, b), at(a2, b));
    return out;
  }
  DenseDensityMatrix out = DenseDensityMatrix::Zero(db, db);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t b2 = 0; b2 < db; ++b2)
      for (std::size_t a = 0; a < da; ++a)
        out(b, b2) += rho(at(a, b), at(a, b2));
  return out;
}

double purity_frobenius(const DenseDensityMatrix &rho) { return rho.squaredNorm(); }

double purity_eigen(const DenseDensityMatrix &rho) {
  Eigen::SelfAdjointEigenSolver<DenseDensityMatrix> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().squaredNorm();
}

double r2gse_dense(const DenseDensityMatrix &rho, const Bipartition &part, Axis axis, double p_m,
                   Region region) {
  checked_sites(rho);
  const DenseDensityMatrix channelled =
      apply_channel_dense(rho, ChannelSpec(axis, p_m, region_sites(part, region)));
  return -std::log(purity_frobenius(partial_trace_dense(channelled, part, region)));
}

double r2gse_dense(const StateVector &state, const Bipartition &part, Axis axis, double p_m,
                   Region region) {
  return r2gse_dense(density_matrix(state), part, axis, p_m, region);
}

DenseDensityMatrix depolarized_dense(const DenseDensityMatrix &rho, const std::vector<int> &sites) {
  const int l = checked_sites(rho);
  std::size_t mask = 0;
  for (int s : sites) {
    if (s < 0 || s >= l)
      throw std::out_of_range("site outside chain");
    mask |= std::size_t{1} << s;
  }
  const auto n = static_cast<std::size_t>(rho.rows());
  const double scale = std::ldexp(1.0, -static_cast<int>(sites.size()));
  DenseDensityMatrix out = DenseDensityMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if ((x & mask) != (y & mask))
        continue;
      Complex sum = 0.0;
      std::size_t s = 0;
      do {
        sum += rho(static_cast<Eigen::Index>((x & ~mask) | s),
                   static_cast<Eigen::Index>((y & ~mask) | s));
        s = (s - mask) & mask;
      } while (s != 0);
      out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = scale * sum;
    }
  }
  return out;
}

} // namespace gsmi::oracle
