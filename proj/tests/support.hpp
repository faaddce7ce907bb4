#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <random>

#include "gsmi/channels.hpp"
#include "gsmi/spin.hpp"
#include "gsmi/tfim.hpp"

namespace gsmi::test {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t stream) { return Rng(0x5eed0000ull + stream); }

inline StateVector random_state(int sites, Rng &rng) {
  std::normal_distribution<double> g;
  StateVector v(static_cast<Eigen::Index>(configuration_count(sites)));
  for (auto &x : v)
    x = Complex(g(rng), g(rng));
  return v.normalized();
}

/// Random full-rank density matrix G G^dagger / Tr.
inline DenseDensityMatrix random_density(int sites, Rng &rng, int rank = 0) {
  std::normal_distribution<double> g;
  const auto d = static_cast<Eigen::Index>(configuration_count(sites));
  const Eigen::Index k = rank > 0 ? rank : d;
  Eigen::MatrixXcd m(d, k);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m.data()[i] = Complex(g(rng), g(rng));
  DenseDensityMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

inline int random_int(Rng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double random_probability(Rng &rng) {
  return std::uniform_real_distribution<double>(0.0, 0.5)(rng);
}

inline Axis random_axis(Rng &rng) {
  constexpr Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
  return axes[random_int(rng, 0, 2)];
}

inline StateVector basis_state(int sites, SpinConfig config) {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(configuration_count(sites)));
  v(static_cast<Eigen::Index>(config)) = 1.0;
  return v;
}

inline StateVector ghz(int sites) {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(configuration_count(sites)));
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

inline StateVector bell() { return ghz(2); }

inline StateVector plus_product(int sites) {
  const auto d = static_cast<Eigen::Index>(configuration_count(sites));
  return StateVector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
}

/// Full-space matrix of a single-site operator, built from Kronecker products
/// with site 0 as the least significant factor.
inline Eigen::MatrixXcd embed(int sites, int site, const Eigen::Matrix2cd &op) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int j = sites - 1; j >= 0; --j) {
    const Eigen::MatrixXcd factor = j == site ? Eigen::MatrixXcd(op) : Eigen::MatrixXcd::Identity(2, 2);
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

inline Eigen::Matrix2cd pauli(char axis) {
  Eigen::Matrix2cd m;
  const Complex i(0.0, 1.0);
  if (axis == 'X')
    m << 0, 1, 1, 0;
  else if (axis == 'Y')
    m << 0, -i, i, 0;
  else
    m << 1, 0, 0, -1;
  return m;
}

inline Eigen::MatrixXcd kron_hamiltonian(int sites) {
  const auto d = static_cast<Eigen::Index>(configuration_count(sites));
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < sites; ++j) {
    h -= embed(sites, j, pauli('Z')) * embed(sites, (j + 1) % sites, pauli('Z'));
    h -= embed(sites, j, pauli('X'));
  }
  return h;
}

/// Literal Kraus sum (1-p) rho + p M rho M on every listed site.
inline Eigen::MatrixXcd kraus_channel(const Eigen::MatrixXcd &rho, int sites, char axis, double p,
                                      const std::vector<int> &targets) {
  Eigen::MatrixXcd out = rho;
  for (int s : targets) {
    const Eigen::MatrixXcd m = embed(sites, s, pauli(axis));
    out = ((1.0 - p) * out + p * m * out * m).eval();
  }
  return out;
}

/// Critical ground state from a Kronecker-built Hamiltonian, L <= 10.
inline StateVector kron_ground_state(int sites) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(kron_hamiltonian(sites));
  return solver.eigenvectors().col(0);
}

inline double max_abs(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

/// |<a|b>| deficit, blind to a global phase.
inline double overlap_deficit(const StateVector &a, const StateVector &b) {
  return 1.0 - std::abs(a.dot(b));
}

} // namespace gsmi::test
