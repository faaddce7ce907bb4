// One PASS/FAIL line per criterion; nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gsmi/doubled.hpp"
#include "gsmi/entropy.hpp"
#include "gsmi/experiment.hpp"
#include "gsmi/oracle.hpp"

using namespace gsmi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string &title, const std::function<Outcome()> &check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass)
    ++failures;
  std::printf("%s criterion %d: %s | %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::mt19937_64 rng(0xacce97ull);

StateVector random_state(int sites) {
  std::normal_distribution<double> g;
  StateVector v(static_cast<Eigen::Index>(configuration_count(sites)));
  for (auto &x : v)
    x = Complex(g(rng), g(rng));
  return v.normalized();
}

DenseDensityMatrix random_density(int sites, int rank) {
  std::normal_distribution<double> g;
  const auto d = static_cast<Eigen::Index>(configuration_count(sites));
  Eigen::MatrixXcd m(d, rank);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m.data()[i] = Complex(g(rng), g(rng));
  DenseDensityMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double probability() { return std::uniform_real_distribution<double>(0.0, 0.5)(rng); }

std::vector<int> random_subset(int sites) {
  std::vector<int> out;
  for (int j = 0; j < sites; ++j)
    if (rng() & 1)
      out.push_back(j);
  return out;
}

constexpr Axis kAxes[] = {Axis::X, Axis::Y, Axis::Z};

std::map<double, FitResult> fits_by_pm(const CaseResult &r) {
  std::map<double, FitResult> out;
  for (const auto &f : r.fits)
    out[f.p_m] = f.fit;
  return out;
}

ExperimentConfig chain20(Axis axis, std::vector<double> p_m, const std::filesystem::path &cache) {
  ExperimentConfig c;
  c.sites = 20;
  c.method = EigenMethod::Lanczos;
  c.axis = axis;
  c.p_m = std::move(p_m);
  c.sizes_a = {6, 7, 8, 9, 10, 11, 12, 13, 14};
  c.window = FitWindow{6, 14};
  c.cache_dir = cache;
  return c;
}

} // namespace

int main() {
  const auto cache = std::filesystem::temp_directory_path() / "gsmi_acceptance_cache";
  std::filesystem::remove_all(cache);
  std::filesystem::create_directories(cache);

  report(1, "case I, Z, p_m=0.5, L=20, L_A in [6,14]: c2 = 1 +- 0.15 within 5 min", [&] {
    const auto start = Clock::now();
    const auto config = chain20(Axis::Z, {0.5}, cache);
    const auto ground = prepare_ground_state(config);
    const auto fit = fits_by_pm(run_case1(config, ground.ground.state)).at(0.5);
    const double t = seconds_since(start);
    return Outcome{std::abs(fit.c2 - 1.0) <= 0.15 && t <= 300.0,
                   fmt("c2=%.6f b2=%.6f time=%.1fs (cold ground state, E0=%.10f)", fit.c2, fit.b2,
                       t, ground.ground.energy)};
  });

  report(2, "case I, Z, p_m=0: c2 = 1 +- 0.15 and c2 >= 1 within 2 min", [&] {
    const auto start = Clock::now();
    const auto config = chain20(Axis::Z, {0.0}, cache);
    const auto ground = prepare_ground_state(config);
    const auto fit = fits_by_pm(run_case1(config, ground.ground.state)).at(0.0);
    const double t = seconds_since(start);
    return Outcome{std::abs(fit.c2 - 1.0) <= 0.15 && fit.c2 >= 1.0 && t <= 120.0,
                   fmt("c2=%.6f time=%.1fs (cache %s)", fit.c2, t, ground.cache_hit ? "hit" : "miss")};
  });

  report(3, "case I, Z dip: c2(0.1) < c2(0.35) - 0.05 and argmin b2 over {0.02..0.5} <= 0.2", [&] {
    std::vector<double> grid;
    for (int k = 1; k <= 25; ++k)
      grid.push_back(k / 50.0);
    grid.push_back(0.35);
    const auto config = chain20(Axis::Z, grid, cache);
    const auto ground = prepare_ground_state(config);
    const auto fits = fits_by_pm(run_case1(config, ground.ground.state));
    double best_pm = -1.0, best_b2 = INFINITY;
    for (int k = 1; k <= 25; ++k) {
      const double b2 = fits.at(k / 50.0).b2;
      if (b2 < best_b2) {
        best_b2 = b2;
        best_pm = k / 50.0;
      }
    }
    const double c_dip = fits.at(0.1).c2;
    const double c_plateau = fits.at(0.35).c2;
    return Outcome{c_dip < c_plateau - 0.05 && best_pm <= 0.2,
                   fmt("c2(0.1)=%.6f c2(0.35)=%.6f min b2=%.6f at p_m=%.2f", c_dip, c_plateau,
                       best_b2, best_pm)};
  });

  report(4, "case I, X: c2 over p_m in {0.05..0.5} flat to 0.1, all 1 +- 0.15", [&] {
    std::vector<double> grid;
    for (int k = 1; k <= 10; ++k)
      grid.push_back(k / 20.0);
    const auto config = chain20(Axis::X, grid, cache);
    const auto ground = prepare_ground_state(config);
    const auto fits = fits_by_pm(run_case1(config, ground.ground.state));
    double lo = INFINITY, hi = -INFINITY;
    for (double p : grid) {
      lo = std::min(lo, fits.at(p).c2);
      hi = std::max(hi, fits.at(p).c2);
    }
    return Outcome{hi - lo <= 0.1 && std::abs(lo - 1.0) <= 0.15 && std::abs(hi - 1.0) <= 0.15,
                   fmt("c2 in [%.6f, %.6f], spread %.6f", lo, hi, hi - lo)};
  });

  report(5, "case II, L=10, Z: c2(0.5,0.1) = 1 +- 0.25, c2(0,0.45) < c2(0,0.2), 6x6 grid within 10 min",
         [&] {
           const auto start = Clock::now();
           ExperimentConfig c;
           c.sites = 10;
           c.method = EigenMethod::Lanczos;
           c.axis = Axis::Z;
           c.p_m = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
           c.p_y = {0.0, 0.1, 0.2, 0.3, 0.4, 0.45};
           c.cache_dir = cache;
           const auto ground = prepare_ground_state(c);
           const auto result = run_case2(c, ground.ground.state);
           const double t = seconds_since(start);
           std::map<std::pair<double, double>, double> c2;
           for (const auto &f : result.fits)
             c2[{f.p_m, f.p_y}] = f.fit.c2;
           const double target = c2.at({0.5, 0.1});
           const double low = c2.at({0.0, 0.2});
           const double high = c2.at({0.0, 0.45});
           return Outcome{result.fits.size() == 36 && std::abs(target - 1.0) <= 0.25 && high < low &&
                              t <= 600.0,
                          fmt("c2(0.5,0.1)=%.6f c2(0,0.2)=%.6f c2(0,0.45)=%.6f fits=%zu time=%.1fs",
                              target, low, high, result.fits.size(), t)};
         });

  report(6, "limit laws, L<=8, all axes, 20 random states: p_m=0 -> Renyi-2 EE, p_m=1/2 -> R2SE, 1e-10",
         [&] {
           double worst = 0.0;
           for (int trial = 0; trial < 20; ++trial) {
             const int sites = uniform(2, 8);
             const Bipartition part(sites, uniform(1, sites - 1));
             const StateVector psi = random_state(sites);
             const SuperVector sv = vectorize_pure(psi);
             const double ee = renyi2_ee(psi, part);
             for (Axis axis : kAxes) {
               const double se = renyi2_shannon_entropy(psi, part, axis);
               for (auto algorithm : {PurityAlgorithm::DenseGram, PurityAlgorithm::LowRank}) {
                 worst = std::max(worst, std::abs(r2gse_pure(psi, part, axis, 0.0, algorithm) - ee));
                 worst = std::max(worst, std::abs(r2gse_pure(psi, part, axis, 0.5, algorithm) - se));
               }
               worst = std::max(worst, std::abs(r2gse_supervector(sv, part, axis, 0.0) - ee));
               worst = std::max(worst, std::abs(r2gse_supervector(sv, part, axis, 0.5) - se));
             }
           }
           return Outcome{worst <= 1e-10, fmt("max deviation %.3e", worst)};
         });

  report(7, "five-way path equivalence on the L=8 critical state, p_m in {0,0.1,0.25,0.5}, 1e-10", [&] {
    const StateVector psi = ground_state(TfimModel(8), EigenMethod::Lanczos).state;
    const SuperVector sv = vectorize_pure(psi);
    double worst = 0.0;
    int comparisons = 0;
    for (Axis axis : kAxes) {
      const BasisState basis = to_measurement_basis(psi, axis);
      for (int a = 1; a < 8; ++a) {
        const Bipartition part(8, a);
        for (Region region : {Region::A, Region::B, Region::Whole}) {
          std::vector<DephasingProfile> profiles;
          if (region == Region::Whole) {
            profiles.push_back(dephasing_profile(basis, part, region, PurityAlgorithm::Rank1Full));
          } else {
            profiles.push_back(dephasing_profile(basis, part, region, PurityAlgorithm::DenseGram));
            profiles.push_back(dephasing_profile(basis, part, region, PurityAlgorithm::LowRank));
          }
          for (double p : {0.0, 0.1, 0.25, 0.5}) {
            std::vector<double> values;
            for (const auto &profile : profiles)
              values.push_back(profile.entropy(p));
            values.push_back(r2gse_supervector(sv, part, axis, p, region));
            values.push_back(oracle::r2gse_dense(psi, part, axis, p, region));
            for (std::size_t i = 0; i < values.size(); ++i)
              for (std::size_t j = i + 1; j < values.size(); ++j) {
                worst = std::max(worst, std::abs(values[i] - values[j]));
                ++comparisons;
              }
          }
        }
      }
    }
    return Outcome{worst <= 1e-10, fmt("max pairwise deviation %.3e over %d pairs", worst, comparisons)};
  });

  report(8, "depolarization and norm-purity identities vs dense oracle, L<=4, 50 mixed states, 1e-12",
         [&] {
           double worst = 0.0;
           for (int trial = 0; trial < 50; ++trial) {
             const int sites = uniform(2, 4);
             const Bipartition part(sites, uniform(1, sites - 1));
             const DenseDensityMatrix rho = random_density(sites, uniform(1, 1 << sites));
             const Axis axis = kAxes[uniform(0, 2)];
             const double p = probability();
             const ChannelSpec dephase(axis, p, region_sites(part, Region::A));
             const SuperVector lifted = apply(lift_channel(dephase), vectorize(rho));
             const DenseDensityMatrix channelled = apply_channel_dense(rho, dephase);

             const SuperVector swept = depolarize_subsystem(lifted, region_sites(part, Region::B));
             const double via_doubled = static_cast<double>(part.dim_b()) * swept.squared_norm();
             const double via_oracle = oracle::purity_frobenius(
                 oracle::partial_trace_dense(channelled, part, Region::A));
             worst = std::max(worst, std::abs(via_doubled - via_oracle));

             const ChannelSpec any(kAxes[uniform(0, 2)], probability(), random_subset(sites));
             const double norm = apply(lift_channel(any), vectorize(rho)).squared_norm();
             worst = std::max(worst, std::abs(norm - oracle::purity_eigen(apply_channel_dense(rho, any))));
           }
           return Outcome{worst <= 1e-12, fmt("max deviation %.3e", worst)};
         });

  report(9, "channels preserve trace/Hermiticity/positivity; I2(L_A) = I2(L-L_A) to 1e-10", [&] {
    double trace_err = 0.0, herm_err = 0.0, min_eig = INFINITY;
    for (int trial = 0; trial < 30; ++trial) {
      const int sites = uniform(1, 4);
      const DenseDensityMatrix rho = random_density(sites, uniform(1, 1 << sites));
      for (Axis axis : kAxes)
        for (double p : {0.0, 0.1, 0.3, 0.5, probability()}) {
          const DenseDensityMatrix out =
              apply_channel_dense(rho, ChannelSpec(axis, p, random_subset(sites)));
          trace_err = std::max(trace_err, std::abs(out.trace() - rho.trace()));
          herm_err = std::max(herm_err, (out - out.adjoint()).cwiseAbs().maxCoeff());
          Eigen::SelfAdjointEigenSolver<DenseDensityMatrix> solver(out, Eigen::EigenvaluesOnly);
          min_eig = std::min(min_eig, solver.eigenvalues()(0));
        }
    }
    double sym_err = 0.0;
    for (int sites : {8, 10}) {
      const StateVector psi = ground_state(TfimModel(sites), EigenMethod::Lanczos).state;
      for (Axis axis : kAxes)
        for (double p : {0.0, 0.1, 0.25, 0.5})
          for (int a = 1; a < sites; ++a)
            sym_err = std::max(sym_err, std::abs(r2gsmi(psi, Bipartition(sites, a), axis, p).i2 -
                                                 r2gsmi(psi, Bipartition(sites, sites - a), axis, p).i2));
    }
    const SuperVector mixed = y_decohere(vectorize_pure(ground_state(TfimModel(8), EigenMethod::Lanczos).state), 0.2);
    for (int a = 1; a < 8; ++a)
      sym_err = std::max(sym_err, std::abs(r2gsmi(mixed, Bipartition(8, a), Axis::Z, 0.3).i2 -
                                           r2gsmi(mixed, Bipartition(8, 8 - a), Axis::Z, 0.3).i2));
    return Outcome{trace_err <= 1e-12 && herm_err <= 1e-12 && min_eig >= -1e-10 && sym_err <= 1e-10,
                   fmt("trace %.2e, hermiticity %.2e, min eigenvalue %.2e, symmetry %.2e", trace_err,
                       herm_err, min_eig, sym_err)};
  });

  report(10, "fit recovers synthetic (c2,b2) to 1e-12; GHZ/product closed forms to 1e-12", [&] {
    double fit_err = 0.0;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const double c2 = u(rng), b2 = u(rng);
      const int sites = uniform(8, 40);
      std::vector<FitPoint> pts;
      for (int a = 1; a <= sites / 2; ++a)
        pts.push_back({sites, a, c2 / 4.0 * scaling_variable(sites, a) + b2});
      const auto fit = fit_cft(pts);
      fit_err = std::max({fit_err, std::abs(fit.c2 - c2), std::abs(fit.b2 - b2)});
    }
    const double ln2 = std::log(2.0);
    double closed_err = 0.0;
    for (int sites = 2; sites <= 8; ++sites) {
      StateVector ghz = StateVector::Zero(static_cast<Eigen::Index>(configuration_count(sites)));
      ghz(0) = ghz(ghz.size() - 1) = 1.0 / std::sqrt(2.0);
      StateVector up = StateVector::Zero(ghz.size());
      up(0) = 1.0;
      const StateVector plus = StateVector::Constant(ghz.size(), 1.0 / std::sqrt(double(ghz.size())));
      for (int a = 1; a < sites; ++a) {
        const Bipartition part(sites, a);
        for (double p : {0.0, 0.1, 0.25, 0.5}) {
          const MiPoint g = r2gsmi(ghz, part, Axis::Z, p);
          closed_err = std::max({closed_err, std::abs(g.s_a - ln2), std::abs(g.s_b - ln2)});
          const MiPoint z = r2gsmi(up, part, Axis::Z, p);
          closed_err = std::max({closed_err, std::abs(z.s_a), std::abs(z.s_b), std::abs(z.s_ab), std::abs(z.i2)});
          const MiPoint x = r2gsmi(plus, part, Axis::X, p);
          closed_err = std::max(closed_err, std::abs(x.i2));
        }
        closed_err = std::max(closed_err, std::abs(r2gsmi(ghz, part, Axis::Z, 0.5).i2 - ln2));
        closed_err = std::max(closed_err, std::abs(r2gsmi(ghz, part, Axis::Z, 0.0).i2 - 2 * ln2));
        closed_err = std::max(closed_err, std::abs(renyi2_ee(ghz, part) - ln2));
        closed_err = std::max(closed_err, std::abs(renyi2_shannon_entropy(plus, part, Axis::Z) - a * ln2));
        closed_err = std::max(closed_err, std::abs(r2gse_pure(plus, part, Axis::Z, 0.5) - a * ln2));
      }
    }
    return Outcome{fit_err <= 1e-12 && closed_err <= 1e-12,
                   fmt("fit deviation %.2e, closed-form deviation %.2e", fit_err, closed_err)};
  });

  std::filesystem::remove_all(cache);
  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
