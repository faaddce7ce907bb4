#pragma once

#include <span>
#include <string>
#include <vector>

namespace gsmi {

/// ln((L / pi) sin(pi L_A / L)), the chord-length variable of the CFT ansatz.
double scaling_variable(int sites, int size_a);

struct FitPoint {
  int sites = 0;
  int size_a = 0;
  double value = 0.0; // I2
};

/// Inclusive L_A window [lo, hi].
struct FitWindow {
  int lo = 0;
  int hi = 0;

  bool contains(int size_a) const { return size_a >= lo && size_a <= hi; }
  std::string to_string() const;
};

/// Interior window ceil(L/4) .. floor(3L/4).
FitWindow default_window(int sites);
/// Parses "lo:hi".
FitWindow parse_window(const std::string &text);

/// I2 = (c2 / 4) x + b2, fitted by ordinary least squares.
struct FitResult {
  double c2 = 0.0;
  double b2 = 0.0;
  double rms = 0.0;
  std::vector<FitPoint> points; // sorted by (L, L_A, value)
  std::vector<double> residuals; // value - model, aligned with `points`
};

/// Throws std::invalid_argument when fewer than two distinct scaling-variable
/// values are present.
FitResult fit_cft(std::span<const FitPoint> points);

std::vector<FitPoint> select_window(std::span<const FitPoint> points, const FitWindow &window);

} // namespace gsmi
