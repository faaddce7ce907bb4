#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsmi/entropy.hpp"
#include "gsmi/scaling.hpp"
#include "gsmi/tfim.hpp"

namespace gsmi {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  int sites = 12;
  EigenMethod method = EigenMethod::Lanczos;
  Axis axis = Axis::Z;
  std::vector<double> p_m{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::vector<double> p_y{0.0};
  std::vector<int> sizes_a; // empty: every 1 <= L_A < L
  std::optional<FitWindow> window;
  PurityAlgorithm algorithm = PurityAlgorithm::Auto;
  std::filesystem::path out = "gsmi.csv";
  std::filesystem::path cache_dir = ".";
  int workers = 1;

  std::vector<int> subsystem_sizes() const;
  FitWindow fit_window() const;
};

/// Sets one `key = value` entry. Throws ConfigError on unknown keys or
/// malformed values.
void apply_setting(ExperimentConfig &config, const std::string &key, const std::string &value);

/// Plain-text config: `key = value` lines, `#` comments, comma-separated lists.
ExperimentConfig parse_config(std::istream &in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path &file, ExperimentConfig base = {});

/// Throws ConfigError when the config violates a precondition of the run.
void validate_config(const ExperimentConfig &config, bool doubled_space);

struct GroundReport {
  GroundStateResult ground;
  std::filesystem::path cache_file;
  bool cache_hit = false;
};

/// Loads the cached ground state for config.sites, or computes and caches it.
GroundReport prepare_ground_state(const ExperimentConfig &config);

struct FitRow {
  Axis axis = Axis::Z;
  double p_m = 0.0;
  double p_y = 0.0;
  FitWindow window;
  FitResult fit;
};

struct CaseResult {
  std::vector<MiPoint> points; // sorted by (p_y, p_m, L_A)
  std::vector<FitRow> fits;    // sorted by (p_y, p_m)
};

/// Pure-state sweep over L_A x p_m.
CaseResult run_case1(const ExperimentConfig &config, const StateVector &ground);
/// Y-decohered sweep over L_A x p_m x p_y in the doubled space.
CaseResult run_case2(const ExperimentConfig &config, const StateVector &ground);

/// One fit per (axis, p_m, p_y) group. A missing window uses each group's
/// default interior window.
std::vector<FitRow> fit_groups(const std::vector<MiPoint> &points,
                               const std::optional<FitWindow> &window);

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

void write_points_csv(std::ostream &out, const std::vector<MiPoint> &points);
void write_fits_csv(std::ostream &out, const std::vector<FitRow> &fits);
std::vector<MiPoint> read_points_csv(std::istream &in);

/// `results.csv` -> `results_fit.csv`.
std::filesystem::path fit_path_for(const std::filesystem::path &points_file);

} // namespace gsmi
