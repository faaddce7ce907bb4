#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gsmi {

using Complex = std::complex<double>;

/// Amplitudes over the 2^L spin configurations. Site j is bit j of the
/// configuration label; bit value 0 is the Z = +1 state.
using StateVector = Eigen::VectorXcd;

/// Coefficient matrix c[a][b]; rows are A configurations, columns B ones.
using CoefficientMatrix = Eigen::MatrixXcd;

using SpinConfig = std::uint64_t;

enum class Axis { X, Y, Z };

char axis_name(Axis axis);
Axis parse_axis(std::string_view text);

inline std::size_t configuration_count(int sites) { return std::size_t{1} << sites; }

/// Sites first, first + 1, ..., first + count - 1.
inline std::vector<int> site_range(int first, int count) {
  std::vector<int> sites(static_cast<std::size_t>(count > 0 ? count : 0));
  std::iota(sites.begin(), sites.end(), first);
  return sites;
}

/// Number of sites L such that `dimension == 2^L`; throws otherwise.
int sites_for_dimension(std::size_t dimension);

inline int site_count(const StateVector &state) {
  return sites_for_dimension(static_cast<std::size_t>(state.size()));
}

/// Single-site Pauli matrix in the computational basis.
Eigen::Matrix2cd pauli_matrix(Axis axis);

StateVector apply_pauli(const StateVector &state, Axis axis, int site);

/// Applies a 2x2 operator to one site of a state, in place.
template <typename Derived>
void apply_site_operator(Eigen::MatrixBase<Derived> &state, const Eigen::Matrix2cd &op, int site) {
  const Eigen::Index bit = Eigen::Index{1} << site;
  const Eigen::Index n = state.size();
  for (Eigen::Index base = 0; base < n; base += 2 * bit) {
    for (Eigen::Index i = base; i < base + bit; ++i) {
      const Complex lo = state(i);
      const Complex hi = state(i + bit);
      state(i) = op(0, 0) * lo + op(0, 1) * hi;
      state(i + bit) = op(1, 0) * lo + op(1, 1) * hi;
    }
  }
}

/// Re-expresses amplitudes in the product eigenbasis of `axis`. Label 0 on a
/// site is the +1 eigenvector of that axis (|+> for X, (|0> + i|1>)/sqrt2 for Y).
StateVector rotate_to_basis(const StateVector &state, Axis axis);

/// Change-of-basis matrix whose columns are the eigenvectors of `axis`,
/// +1 eigenvector first.
Eigen::Matrix2cd eigenbasis(Axis axis);

/// Contiguous subsystem A = sites [0, size_a), B = [size_a, sites).
struct Bipartition {
  int sites = 0;
  int size_a = 0;

  Bipartition() = default;
  Bipartition(int sites, int size_a);

  int size_b() const { return sites - size_a; }
  std::size_t dim_a() const { return configuration_count(size_a); }
  std::size_t dim_b() const { return configuration_count(size_b()); }
  SpinConfig mask_a() const { return (SpinConfig{1} << size_a) - 1; }
  SpinConfig mask_b() const { return ((SpinConfig{1} << sites) - 1) ^ mask_a(); }
  bool degenerate() const { return size_a == 0 || size_a == sites; }
};

/// Pure reshape of the amplitude vector: c(a, b) = state[a | b << L_A].
CoefficientMatrix coefficient_matrix(const StateVector &state, const Bipartition &part);

struct SchmidtData {
  Eigen::VectorXd values; // descending, truncated to the numerical rank
  Eigen::MatrixXcd left;  // columns over A configurations
  Eigen::MatrixXcd right; // columns over B configurations
  int rank = 0;
};

/// Thin SVD of an arbitrary matrix, truncated where s_k <= 1e-12 s_0.
SchmidtData schmidt(const Eigen::MatrixXcd &coefficients);
SchmidtData schmidt(const StateVector &state, const Bipartition &part);

/// Unnormalized Walsh-Hadamard transform applied to every column, in place.
/// The row count must be a power of two.
template <typename Derived>
void walsh_hadamard(Eigen::MatrixBase<Derived> &m) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    auto col = m.col(c);
    for (Eigen::Index h = 1; h < n; h *= 2) {
      for (Eigen::Index base = 0; base < n; base += 2 * h) {
        for (Eigen::Index i = base; i < base + h; ++i) {
          const auto a = col(i);
          const auto b = col(i + h);
          col(i) = a + b;
          col(i + h) = a - b;
        }
      }
    }
  }
}

} // namespace gsmi
