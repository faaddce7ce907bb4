#pragma once

// Brute-force dense references. Everything here forms explicit density
// matrices and is capped at L <= 8; the fast paths are tested against it.

#include "gsmi/channels.hpp"
#include "gsmi/doubled.hpp"

namespace gsmi::oracle {

inline constexpr int kMaxOracleSites = 8;

/// Index-summed partial trace keeping `keep` (A or B).
DenseDensityMatrix partial_trace_dense(const DenseDensityMatrix &rho, const Bipartition &part,
                                       Region keep);

double purity_frobenius(const DenseDensityMatrix &rho);
double purity_eigen(const DenseDensityMatrix &rho);

/// Literal composition: M-axis channel on the kept region, partial trace,
/// Tr[rho^2], -log.
double r2gse_dense(const DenseDensityMatrix &rho, const Bipartition &part, Axis axis, double p_m,
                   Region region = Region::A);
double r2gse_dense(const StateVector &state, const Bipartition &part, Axis axis, double p_m,
                   Region region = Region::A);

/// (I_rest / d_rest) (x) Tr_rest[rho] with the traced sites restored in place.
DenseDensityMatrix depolarized_dense(const DenseDensityMatrix &rho, const std::vector<int> &sites);

} // namespace gsmi::oracle
