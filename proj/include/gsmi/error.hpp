#pragma once

#include <stdexcept>

namespace gsmi {

/// A computation that cannot produce a trustworthy number: eigensolver
/// non-convergence, a degenerate ground state, an underflowed purity.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace gsmi
