#include "gsmi/spin.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gsmi {

char axis_name(Axis axis) {
  switch (axis) {
  case Axis::X:
    return 'X';
  case Axis::Y:
    return 'Y';
  case Axis::Z:
    return 'Z';
  }
  return '?';
}

Axis parse_axis(std::string_view text) {
  if (text == "X" || text == "x")
    return Axis::X;
  if (text == "Y" || text == "y")
    return Axis::Y;
  if (text == "Z" || text == "z")
    return Axis::Z;
  throw std::invalid_argument("unknown axis '" + std::string(text) + "' (expected X, Y or Z)");
}

int sites_for_dimension(std::size_t dimension) {
  if (dimension == 0 || !std::has_single_bit(dimension))
    throw std::invalid_argument("state dimension " + std::to_string(dimension) +
                                " is not a power of two");
  return std::countr_zero(dimension);
}

Eigen::Matrix2cd pauli_matrix(Axis axis) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd m;
  switch (axis) {
  case Axis::X:
    m << 0.0, 1.0, 1.0, 0.0;
    break;
  case Axis::Y:
    m << 0.0, -i, i, 0.0;
    break;
  case Axis::Z:
    m << 1.0, 0.0, 0.0, -1.0;
    break;
  }
  return m;
}

StateVector apply_pauli(const StateVector &state, Axis axis, int site) {
  const int sites = site_count(state);
  if (site < 0 || site >= sites)
    throw std::out_of_range("site " + std::to_string(site) + " outside chain of " +
                            std::to_string(sites) + " sites");
  const SpinConfig bit = SpinConfig{1} << site;
  const Complex i{0.0, 1.0};
  StateVector out(state.size());
  for (Eigen::Index s = 0; s < state.size(); ++s) {
    const auto config = static_cast<SpinConfig>(s);
    const bool down = config & bit;
    switch (axis) {
    case Axis::Z:
      out(s) = down ? -state(s) : state(s);
      break;
    case Axis::X:
      out(static_cast<Eigen::Index>(config ^ bit)) = state(s);
      break;
    case Axis::Y:
      // Y|0> = i|1>, Y|1> = -i|0>
      out(static_cast<Eigen::Index>(config ^ bit)) = down ? -i * state(s) : i * state(s);
      break;
    }
  }
  return out;
}

Eigen::Matrix2cd eigenbasis(Axis axis) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd v;
  switch (axis) {
  case Axis::Z:
    v.setIdentity();
    break;
  case Axis::X:
    v << r, r, r, -r;
    break;
  case Axis::Y:
    v << r, r, i * r, -i * r;
    break;
  }
  return v;
}

StateVector rotate_to_basis(const StateVector &state, Axis axis) {
  StateVector out = state;
  if (axis == Axis::Z)
    return out;
  const int sites = site_count(state);
  const Eigen::Matrix2cd to_axis = eigenbasis(axis).adjoint();
  for (int j = 0; j < sites; ++j)
    apply_site_operator(out, to_axis, j);
  return out;
}

Bipartition::Bipartition(int sites_, int size_a_) : sites(sites_), size_a(size_a_) {
  if (sites < 1 || sites > 62)
    throw std::invalid_argument("bipartition needs 1..62 sites, got " + std::to_string(sites));
  if (size_a < 0 || size_a > sites)
    throw std::invalid_argument("subsystem size " + std::to_string(size_a) +
                                " outside [0, " + std::to_string(sites) + "]");
}

CoefficientMatrix coefficient_matrix(const StateVector &state, const Bipartition &part) {
  if (part.degenerate())
    throw std::invalid_argument("degenerate bipartition: L_A must lie strictly between 0 and L");
  if (site_count(state) != part.sites)
    throw std::invalid_argument("state has " + std::to_string(site_count(state)) +
                                " sites, bipartition expects " + std::to_string(part.sites));
  const auto rows = static_cast<Eigen::Index>(part.dim_a());
  const auto cols = static_cast<Eigen::Index>(part.dim_b());
  return Eigen::Map<const Eigen::MatrixXcd>(state.data(), rows, cols);
}

SchmidtData schmidt(const Eigen::MatrixXcd &coefficients) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(coefficients, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd &s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cutoff = 1e-12 * s(0);
    while (rank < s.size() && s(rank) > cutoff)
      ++rank;
  }
  SchmidtData data;
  data.values = s.head(rank);
  data.left = svd.matrixU().leftCols(rank);
  data.right = svd.matrixV().leftCols(rank);
  data.rank = static_cast<int>(rank);
  return data;
}

SchmidtData schmidt(const StateVector &state, const Bipartition &part) {
  return schmidt(coefficient_matrix(state, part));
}

} // namespace gsmi
