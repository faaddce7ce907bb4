#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "gsmi/error.hpp"
#include "gsmi/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
  std::string config;
  std::string cache_dir;
  std::string out;
  std::string window;
  int workers = 0;
};

void add_common(CLI::App &cmd, Overrides &o) {
  cmd.add_option("--config", o.config, "key = value config file")->check(CLI::ExistingFile);
  cmd.add_option("--cache-dir", o.cache_dir, "ground-state cache directory");
  cmd.add_option("--out", o.out, "output CSV path");
  cmd.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--window", o.window, "fit window lo:hi");
}

gsmi::ExperimentConfig resolve(const Overrides &o) {
  gsmi::ExperimentConfig config;
  if (!o.config.empty())
    config = gsmi::load_config(o.config);
  if (!o.cache_dir.empty())
    config.cache_dir = o.cache_dir;
  if (!o.out.empty())
    config.out = o.out;
  if (o.workers > 0)
    config.workers = o.workers;
  if (!o.window.empty())
    gsmi::apply_setting(config, "window", o.window);
  return config;
}

std::ofstream open_output(const std::filesystem::path &path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw gsmi::ConfigError("cannot write " + path.string());
  return out;
}

void emit(const gsmi::ExperimentConfig &config, const gsmi::CaseResult &result) {
  {
    auto out = open_output(config.out);
    gsmi::write_points_csv(out, result.points);
  }
  const auto fit_file = gsmi::fit_path_for(config.out);
  {
    auto out = open_output(fit_file);
    gsmi::write_fits_csv(out, result.fits);
  }
  std::cout << "points: " << config.out.string() << " (" << result.points.size() << " rows)\n"
            << "fits:   " << fit_file.string() << " (" << result.fits.size() << " rows)\n";
}

void print_fits(const std::vector<gsmi::FitRow> &fits) {
  std::printf("%4s %8s %8s %10s %10s %10s\n", "axis", "p_m", "p_y", "c2", "b2", "rms");
  for (const auto &f : fits)
    std::printf("%4c %8.4f %8.4f %10.6f %10.6f %10.3e\n", gsmi::axis_name(f.axis), f.p_m, f.p_y,
                f.fit.c2, f.fit.b2, f.fit.rms);
}

void print_map(const std::vector<gsmi::FitRow> &fits) {
  std::map<double, std::map<double, double>> table;
  std::map<double, bool> columns;
  for (const auto &f : fits) {
    table[f.p_y][f.p_m] = f.fit.c2;
    columns[f.p_m] = true;
  }
  std::printf("c2(p_m, p_y)\n%8s", "p_y\\p_m");
  for (const auto &[p_m, _] : columns)
    std::printf(" %8.3f", p_m);
  std::printf("\n");
  for (const auto &[p_y, row] : table) {
    std::printf("%8.3f", p_y);
    for (const auto &[p_m, _] : columns) {
      const auto it = row.find(p_m);
      if (it == row.end())
        std::printf(" %8s", "-");
      else
        std::printf(" %8.4f", it->second);
    }
    std::printf("\n");
  }
}

gsmi::GroundReport ground(const gsmi::ExperimentConfig &config) {
  auto report = gsmi::prepare_ground_state(config);
  std::cout << "L = " << config.sites << "  E0 = " << gsmi::format_double(report.ground.energy)
            << "  residual = " << report.ground.residual << "  cache "
            << (report.cache_hit ? "hit" : "written") << ": " << report.cache_file.string()
            << '\n';
  return report;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Renyi-2 generalized Shannon mutual information of the critical Ising chain"};
  app.require_subcommand(1);

  Overrides ground_opts, case1_opts, case2_opts, fit_opts;
  std::string fit_input;

  auto *ground_cmd = app.add_subcommand("ground", "compute or load the cached ground state");
  add_common(*ground_cmd, ground_opts);
  auto *case1_cmd = app.add_subcommand("case1", "pure-state sweep over L_A and p_m");
  add_common(*case1_cmd, case1_opts);
  auto *case2_cmd = app.add_subcommand("case2", "Y-decohered sweep over L_A, p_m and p_y");
  add_common(*case2_cmd, case2_opts);
  auto *fit_cmd = app.add_subcommand("fit", "fit c2 and b2 from an existing points CSV");
  add_common(*fit_cmd, fit_opts);
  fit_cmd->add_option("input", fit_input, "points CSV")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*ground_cmd) {
      auto config = resolve(ground_opts);
      gsmi::validate_config(config, false);
      ground(config);
    } else if (*case1_cmd) {
      auto config = resolve(case1_opts);
      gsmi::validate_config(config, false);
      const auto report = ground(config);
      const auto result = gsmi::run_case1(config, report.ground.state);
      emit(config, result);
      print_fits(result.fits);
    } else if (*case2_cmd) {
      auto config = resolve(case2_opts);
      gsmi::validate_config(config, true);
      const auto report = ground(config);
      const auto result = gsmi::run_case2(config, report.ground.state);
      emit(config, result);
      print_map(result.fits);
    } else if (*fit_cmd) {
      auto config = resolve(fit_opts);
      std::ifstream in(fit_input);
      const auto points = gsmi::read_points_csv(in);
      const auto fits = gsmi::fit_groups(points, config.window);
      const auto target = fit_opts.out.empty() ? gsmi::fit_path_for(fit_input)
                                               : std::filesystem::path(fit_opts.out);
      auto out = open_output(target);
      gsmi::write_fits_csv(out, fits);
      std::cout << "fits: " << target.string() << " (" << fits.size() << " rows)\n";
      print_fits(fits);
    }
  } catch (const gsmi::NumericError &e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const gsmi::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
