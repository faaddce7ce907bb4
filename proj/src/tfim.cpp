#include "gsmi/tfim.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "gsmi/error.hpp"

namespace gsmi {

TfimModel::TfimModel(int sites_) : sites(sites_) {
  if (sites < 2 || sites > 30)
    throw std::invalid_argument("TFIM chain needs 2..30 sites, got " + std::to_string(sites));
}

double TfimModel::diagonal(SpinConfig config) const {
  const SpinConfig neighbour = (config >> 1) | ((config & 1u) << (sites - 1));
  const int broken = std::popcount(config ^ neighbour);
  return -static_cast<double>(sites - 2 * broken);
}

EigenMethod parse_method(std::string_view text) {
  if (text == "lanczos")
    return EigenMethod::Lanczos;
  if (text == "dense")
    return EigenMethod::Dense;
  throw std::invalid_argument("unknown eigen method '" + std::string(text) +
                              "' (expected lanczos or dense)");
}

Eigen::MatrixXd dense_hamiltonian(const TfimModel &model) {
  if (model.sites > 12)
    throw std::invalid_argument("dense Hamiltonian limited to L <= 12");
  const auto n = static_cast<Eigen::Index>(model.dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto config = static_cast<SpinConfig>(s);
    h(s, s) += model.diagonal(config);
    for (int j = 0; j < model.sites; ++j)
      h(static_cast<Eigen::Index>(config ^ (SpinConfig{1} << j)), s) -= 1.0;
  }
  return h;
}

double eigen_residual(const TfimModel &model, const StateVector &state, double energy) {
  return (apply_hamiltonian(model, state) - energy * state).norm();
}

namespace {

void fix_global_phase(StateVector &state) {
  const double largest = state.cwiseAbs().maxCoeff();
  Eigen::Index pick = 0;
  while (std::abs(state(pick)) < largest * (1.0 - 1e-12))
    ++pick;
  state *= std::conj(state(pick)) / std::abs(state(pick));
}

GroundStateResult finish(const TfimModel &model, double energy, const Eigen::VectorXd &vec,
                         int iterations) {
  GroundStateResult result;
  result.energy = energy;
  result.state = vec.cast<Complex>();
  result.state.normalize();
  fix_global_phase(result.state);
  result.residual = eigen_residual(model, result.state, energy);
  result.iterations = iterations;
  if (!(result.residual <= 1e-8))
    throw NumericError("ground state residual " + std::to_string(result.residual) +
                       " exceeds 1e-8");
  return result;
}

GroundStateResult dense_ground_state(const TfimModel &model) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_hamiltonian(model));
  if (solver.info() != Eigen::Success)
    throw NumericError("dense eigensolver failed");
  return finish(model, solver.eigenvalues()(0), solver.eigenvectors().col(0), 0);
}

// Lanczos with full (twice-iterated classical Gram-Schmidt) reorthogonalization.
// When the Krylov basis is full the iteration restarts from the current Ritz vector.
GroundStateResult lanczos_ground_state(const TfimModel &model, const LanczosOptions &options) {
  if (model.sites < 3)
    throw std::invalid_argument("Lanczos path requires L >= 3 (L = 2 double-counts the bond)");
  const auto n = static_cast<Eigen::Index>(model.dimension());

  Eigen::Index krylov = options.krylov_dimension;
  if (krylov <= 0) {
    const double budget = 1024.0 * 1024.0 * 1024.0;
    krylov = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(budget / (8.0 * n)), 8, 80);
  }
  krylov = std::min(krylov, n);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i)
    start(i) = normal(rng);
  start.normalize();

  Eigen::MatrixXd basis(n, krylov);
  std::vector<double> alpha;
  std::vector<double> beta;
  int total = 0;

  while (true) {
    basis.col(0) = start;
    alpha.clear();
    beta.clear();
    bool converged = false;
    Eigen::Index used = 0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    Eigen::VectorXd ritz_coeffs;

    for (Eigen::Index j = 0; j < krylov; ++j) {
      Eigen::VectorXd w = apply_hamiltonian<double>(model, basis.col(j));
      ++total;
      alpha.push_back(basis.col(j).dot(w));
      for (int pass = 0; pass < 2; ++pass)
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      const double b = w.norm();
      used = j + 1;

      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), used);
      Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(beta.data(), used - 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      theta0 = tri.eigenvalues()(0);
      theta1 = used > 1 ? tri.eigenvalues()(1) : theta0;
      ritz_coeffs = tri.eigenvectors().col(0);

      const double estimate = b * std::abs(ritz_coeffs(used - 1));
      if (estimate < options.tolerance * std::max(1.0, std::abs(theta0)) || b < 1e-14) {
        converged = true;
        break;
      }
      if (total >= options.max_iterations)
        throw NumericError("Lanczos did not converge within " +
                           std::to_string(options.max_iterations) + " iterations");
      if (j + 1 < krylov) {
        basis.col(j + 1) = w / b;
        beta.push_back(b);
      }
    }

    Eigen::VectorXd ritz = basis.leftCols(used) * ritz_coeffs;
    ritz.normalize();
    if (converged) {
      if (used > 1 && theta1 - theta0 < 1e-10)
        throw NumericError("Lanczos Ritz gap " + std::to_string(theta1 - theta0) +
                           " below 1e-10: ground state is not unique");
      return finish(model, theta0, ritz, total);
    }
    start = ritz;
  }
}

void put_u32(std::ostream &out, std::uint32_t v) {
  std::array<char, 4> bytes{};
  for (int k = 0; k < 4; ++k)
    bytes[k] = static_cast<char>((v >> (8 * k)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream &out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> bytes{};
  for (int k = 0; k < 8; ++k)
    bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_bytes(std::istream &in, int count) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char *>(bytes.data()), count);
  if (!in)
    throw std::runtime_error("ground-state cache truncated");
  std::uint64_t v = 0;
  for (int k = 0; k < count; ++k)
    v |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  return v;
}

} // namespace

GroundStateResult ground_state(const TfimModel &model, EigenMethod method,
                               const LanczosOptions &options) {
  if (method == EigenMethod::Dense)
    return dense_ground_state(model);
  if (model.sites > 24)
    throw std::invalid_argument("Lanczos path limited to L <= 24");
  return lanczos_ground_state(model, options);
}

std::filesystem::path ground_cache_path(const std::filesystem::path &dir, int sites) {
  return dir / ("tfim_L" + std::to_string(sites) + ".tfgs");
}

void write_ground_cache(const std::filesystem::path &file, int sites, double energy,
                        const StateVector &state) {
  if (site_count(state) != sites)
    throw std::invalid_argument("cache state length does not match L");
  if (file.has_parent_path())
    std::filesystem::create_directories(file.parent_path());
  const auto tmp = std::filesystem::path(file).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write ground-state cache " + tmp.string());
    out.write("TFGS", 4);
    put_u32(out, kGroundCacheVersion);
    put_u32(out, static_cast<std::uint32_t>(sites));
    put_f64(out, energy);
    for (Eigen::Index s = 0; s < state.size(); ++s) {
      put_f64(out, state(s).real());
      put_f64(out, state(s).imag());
    }
    if (!out)
      throw std::runtime_error("failed writing ground-state cache " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

std::optional<GroundStateResult> read_ground_cache(const std::filesystem::path &file, int sites) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (!in || std::string(magic.data(), 4) != "TFGS")
    throw std::runtime_error("bad magic in ground-state cache " + file.string());
  const auto version = static_cast<std::uint32_t>(get_bytes(in, 4));
  if (version != kGroundCacheVersion)
    throw std::runtime_error("unsupported ground-state cache version " + std::to_string(version));
  const auto stored_sites = static_cast<std::uint32_t>(get_bytes(in, 4));
  if (static_cast<int>(stored_sites) != sites)
    throw std::runtime_error("ground-state cache holds L=" + std::to_string(stored_sites) +
                             ", expected L=" + std::to_string(sites));
  GroundStateResult result;
  result.energy = std::bit_cast<double>(get_bytes(in, 8));
  result.state.resize(static_cast<Eigen::Index>(configuration_count(sites)));
  for (Eigen::Index s = 0; s < result.state.size(); ++s) {
    const double re = std::bit_cast<double>(get_bytes(in, 8));
    const double im = std::bit_cast<double>(get_bytes(in, 8));
    result.state(s) = Complex{re, im};
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw std::runtime_error("trailing bytes in ground-state cache " + file.string());
  result.residual = eigen_residual(TfimModel(sites), result.state, result.energy);
  return result;
}

} // namespace gsmi
