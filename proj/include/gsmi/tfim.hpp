#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "gsmi/spin.hpp"

namespace gsmi {

/// Periodic critical transverse-field Ising chain,
///   H = -sum_j (Z_j Z_{j+1} + X_j),  site L identified with site 0.
/// With L = 2 the single bond is counted twice.
struct TfimModel {
  int sites = 0;

  explicit TfimModel(int sites);

  std::size_t dimension() const { return configuration_count(sites); }

  /// -sum_j z_j z_{j+1} for a configuration.
  double diagonal(SpinConfig config) const;
};

/// Matrix-free H|v>; works for real or complex amplitudes.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1>
apply_hamiltonian(const TfimModel &model, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> &v) {
  if (static_cast<std::size_t>(v.size()) != model.dimension())
    throw std::invalid_argument("state length does not match 2^L for the model");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(v.size());
  for (Eigen::Index s = 0; s < v.size(); ++s) {
    const auto config = static_cast<SpinConfig>(s);
    Scalar acc = model.diagonal(config) * v(s);
    for (int j = 0; j < model.sites; ++j)
      acc -= v(static_cast<Eigen::Index>(config ^ (SpinConfig{1} << j)));
    out(s) = acc;
  }
  return out;
}

enum class EigenMethod { Lanczos, Dense };

EigenMethod parse_method(std::string_view text);

struct LanczosOptions {
  int max_iterations = 500;
  /// Krylov vectors kept before an explicit restart from the current Ritz
  /// vector; 0 picks a value from a ~1 GiB memory budget.
  int krylov_dimension = 0;
  double tolerance = 1e-11;
  std::uint64_t seed = 0x7f4a7c15u;
};

struct GroundStateResult {
  double energy = 0.0;
  StateVector state;
  double residual = 0.0; // ||H psi - E psi||
  int iterations = 0;
};

/// Lowest eigenpair. The global phase is fixed so that the first
/// largest-magnitude amplitude is real and positive.
GroundStateResult ground_state(const TfimModel &model, EigenMethod method,
                               const LanczosOptions &options = {});

/// Dense 2^L x 2^L Hamiltonian; small L only.
Eigen::MatrixXd dense_hamiltonian(const TfimModel &model);

double eigen_residual(const TfimModel &model, const StateVector &state, double energy);

// Ground-state cache: little-endian "TFGS", u32 version, u32 L, f64 energy,
// then 2^L (f64 re, f64 im) pairs.
inline constexpr std::uint32_t kGroundCacheVersion = 1;

std::filesystem::path ground_cache_path(const std::filesystem::path &dir, int sites);
void write_ground_cache(const std::filesystem::path &file, int sites, double energy,
                        const StateVector &state);
/// Returns nullopt when the file is missing; throws on a malformed file.
std::optional<GroundStateResult> read_ground_cache(const std::filesystem::path &file, int sites);

} // namespace gsmi
