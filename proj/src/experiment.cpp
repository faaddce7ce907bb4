#include "gsmi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "gsmi/doubled.hpp"

namespace gsmi {

namespace {

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep)
    parts.emplace_back();
  return parts;
}

template <typename T>
T parse_number(const std::string &key, const std::string &text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "'");
  return value;
}

std::vector<double> parse_probabilities(const std::string &key, const std::string &value) {
  std::vector<double> out;
  for (const auto &item : split(value, ','))
    out.push_back(parse_number<double>(key, item));
  if (out.empty())
    throw ConfigError("config key '" + key + "' needs at least one value");
  return out;
}

std::vector<int> parse_sizes(const std::string &key, const std::string &value) {
  std::vector<int> out;
  for (const auto &item : split(value, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(parse_number<int>(key, item));
      continue;
    }
    const int lo = parse_number<int>(key, trim(item.substr(0, colon)));
    const int hi = parse_number<int>(key, trim(item.substr(colon + 1)));
    for (int v = lo; v <= hi; ++v)
      out.push_back(v);
  }
  return out;
}

/// Runs task(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any task is rethrown after all threads join.
template <typename Task>
void parallel_for(std::size_t count, int workers, Task task) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next = count;
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(run);
  }
  if (failure)
    std::rethrow_exception(failure);
}

void sort_points(std::vector<MiPoint> &points) {
  std::sort(points.begin(), points.end(), [](const MiPoint &a, const MiPoint &b) {
    return std::tuple(a.p_y, a.p_m, a.sites, a.size_a, axis_name(a.axis)) <
           std::tuple(b.p_y, b.p_m, b.sites, b.size_a, axis_name(b.axis));
  });
}

} // namespace

std::vector<int> ExperimentConfig::subsystem_sizes() const {
  if (!sizes_a.empty())
    return sizes_a;
  std::vector<int> all;
  for (int a = 1; a < sites; ++a)
    all.push_back(a);
  return all;
}

FitWindow ExperimentConfig::fit_window() const { return window.value_or(default_window(sites)); }

void apply_setting(ExperimentConfig &config, const std::string &key, const std::string &value) {
  try {
    if (key == "L")
      config.sites = parse_number<int>(key, value);
    else if (key == "method")
      config.method = parse_method(value);
    else if (key == "axis")
      config.axis = parse_axis(value);
    else if (key == "p_m")
      config.p_m = parse_probabilities(key, value);
    else if (key == "p_y")
      config.p_y = parse_probabilities(key, value);
    else if (key == "L_A")
      config.sizes_a = parse_sizes(key, value);
    else if (key == "window")
      config.window = parse_window(value);
    else if (key == "algorithm")
      config.algorithm = parse_algorithm(value);
    else if (key == "out")
      config.out = value;
    else if (key == "cache_dir")
      config.cache_dir = value;
    else if (key == "workers")
      config.workers = parse_number<int>(key, value);
    else
      throw ConfigError("unknown config key '" + key + "'");
  } catch (const std::invalid_argument &e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

ExperimentConfig parse_config(std::istream &in, ExperimentConfig base) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected 'key = value'");
    apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path &file, ExperimentConfig base) {
  std::ifstream in(file);
  if (!in)
    throw ConfigError("cannot open config file " + file.string());
  return parse_config(in, std::move(base));
}

void validate_config(const ExperimentConfig &config, bool doubled_space) {
  if (config.sites < 2)
    throw ConfigError("L must be at least 2");
  if (config.method == EigenMethod::Lanczos && config.sites < 3)
    throw ConfigError("Lanczos requires L >= 3 (L = 2 double-counts the periodic bond)");
  if (config.method == EigenMethod::Lanczos && config.sites > 24)
    throw ConfigError("Lanczos is limited to L <= 24");
  if (config.method == EigenMethod::Dense && config.sites > 12)
    throw ConfigError("dense eigensolve is limited to L <= 12");
  if (doubled_space && config.sites > kMaxSupervectorSites)
    throw ConfigError("doubled-space experiments require L <= " +
                      std::to_string(kMaxSupervectorSites));
  for (const auto *grid : {&config.p_m, &config.p_y})
    for (double p : *grid)
      if (!(p >= 0.0 && p <= 0.5))
        throw ConfigError("probability " + format_double(p) + " outside [0, 1/2]");
  for (int a : config.subsystem_sizes())
    if (a <= 0 || a >= config.sites)
      throw ConfigError("L_A = " + std::to_string(a) + " outside (0, L)");
  if (config.workers < 1)
    throw ConfigError("workers must be >= 1");
}

GroundReport prepare_ground_state(const ExperimentConfig &config) {
  GroundReport report;
  report.cache_file = ground_cache_path(config.cache_dir, config.sites);
  if (auto cached = read_ground_cache(report.cache_file, config.sites)) {
    if (cached->residual <= 1e-8) {
      report.ground = std::move(*cached);
      report.cache_hit = true;
      return report;
    }
  }
  report.ground = ground_state(TfimModel(config.sites), config.method);
  write_ground_cache(report.cache_file, config.sites, report.ground.energy, report.ground.state);
  return report;
}

std::vector<FitRow> fit_groups(const std::vector<MiPoint> &points,
                               const std::optional<FitWindow> &window) {
  std::map<std::tuple<char, double, double>, std::vector<const MiPoint *>> groups;
  for (const auto &p : points)
    groups[{axis_name(p.axis), p.p_m, p.p_y}].push_back(&p);
  std::vector<FitRow> rows;
  for (const auto &[key, members] : groups) {
    FitRow row;
    row.axis = members.front()->axis;
    row.p_m = std::get<1>(key);
    row.p_y = std::get<2>(key);
    row.window = window.value_or(default_window(members.front()->sites));
    std::vector<FitPoint> selected;
    for (const MiPoint *m : members)
      if (row.window.contains(m->size_a))
        selected.push_back({m->sites, m->size_a, m->i2});
    row.fit = fit_cft(selected);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const FitRow &a, const FitRow &b) {
    return std::tuple(a.p_y, a.p_m, axis_name(a.axis)) < std::tuple(b.p_y, b.p_m, axis_name(b.axis));
  });
  return rows;
}

CaseResult run_case1(const ExperimentConfig &config, const StateVector &ground) {
  validate_config(config, false);
  if (config.p_y.size() != 1 || config.p_y.front() != 0.0)
    throw ConfigError("case1 is pure-state only; p_y must be 0");
  if (site_count(ground) != config.sites)
    throw ConfigError("ground state does not match L");
  const BasisState basis = to_measurement_basis(ground, config.axis);
  const auto sizes = config.subsystem_sizes();
  std::vector<std::vector<MiPoint>> columns(sizes.size());
  parallel_for(sizes.size(), config.workers, [&](std::size_t i) {
    columns[i] =
        r2gsmi_sweep(basis, Bipartition(config.sites, sizes[i]), config.p_m, config.algorithm);
  });
  CaseResult result;
  for (auto &column : columns)
    result.points.insert(result.points.end(), column.begin(), column.end());
  sort_points(result.points);
  result.fits = fit_groups(result.points, config.fit_window());
  return result;
}

CaseResult run_case2(const ExperimentConfig &config, const StateVector &ground) {
  validate_config(config, true);
  if (site_count(ground) != config.sites)
    throw ConfigError("ground state does not match L");
  const SuperVector pure = vectorize_pure(ground);
  const auto sizes = config.subsystem_sizes();
  CaseResult result;
  for (double p_y : config.p_y) {
    const SuperVector decohered = y_decohere(pure, p_y);
    std::vector<std::vector<MiPoint>> columns(sizes.size());
    parallel_for(sizes.size(), config.workers, [&](std::size_t i) {
      columns[i] = r2gsmi_sweep(decohered, Bipartition(config.sites, sizes[i]), config.axis,
                                config.p_m, p_y);
    });
    for (auto &column : columns)
      result.points.insert(result.points.end(), column.begin(), column.end());
  }
  sort_points(result.points);
  result.fits = fit_groups(result.points, config.fit_window());
  return result;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{})
    throw std::runtime_error("failed to format double");
  return std::string(buf.data(), ptr);
}

void write_points_csv(std::ostream &out, const std::vector<MiPoint> &points) {
  out << "# entropies in nats (natural logarithm)\n";
  out << "L,L_A,axis,p_m,p_y,S_A,S_B,S_AB,I2\n";
  for (const auto &p : points)
    out << p.sites << ',' << p.size_a << ',' << axis_name(p.axis) << ',' << format_double(p.p_m)
        << ',' << format_double(p.p_y) << ',' << format_double(p.s_a) << ','
        << format_double(p.s_b) << ',' << format_double(p.s_ab) << ',' << format_double(p.i2)
        << '\n';
}

void write_fits_csv(std::ostream &out, const std::vector<FitRow> &fits) {
  out << "# ordinary least squares of I2 on ln((L/pi) sin(pi L_A/L)); c2 = 4 * slope\n";
  out << "axis,p_m,p_y,c2,b2,rms,window\n";
  for (const auto &f : fits)
    out << axis_name(f.axis) << ',' << format_double(f.p_m) << ',' << format_double(f.p_y) << ','
        << format_double(f.fit.c2) << ',' << format_double(f.fit.b2) << ','
        << format_double(f.fit.rms) << ',' << f.window.to_string() << '\n';
}

std::vector<MiPoint> read_points_csv(std::istream &in) {
  std::vector<MiPoint> points;
  std::string line;
  bool header = false;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    if (!header) {
      if (line != "L,L_A,axis,p_m,p_y,S_A,S_B,S_AB,I2")
        throw ConfigError("unexpected CSV header: " + line);
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9)
      throw ConfigError("CSV line " + std::to_string(number) + ": expected 9 fields");
    MiPoint p;
    p.sites = parse_number<int>("L", f[0]);
    p.size_a = parse_number<int>("L_A", f[1]);
    try {
      p.axis = parse_axis(f[2]);
    } catch (const std::invalid_argument &e) {
      throw ConfigError(e.what());
    }
    p.p_m = parse_number<double>("p_m", f[3]);
    p.p_y = parse_number<double>("p_y", f[4]);
    p.s_a = parse_number<double>("S_A", f[5]);
    p.s_b = parse_number<double>("S_B", f[6]);
    p.s_ab = parse_number<double>("S_AB", f[7]);
    p.i2 = parse_number<double>("I2", f[8]);
    points.push_back(p);
  }
  if (!header)
    throw ConfigError("CSV has no header row");
  return points;
}

std::filesystem::path fit_path_for(const std::filesystem::path &points_file) {
  auto name = points_file.stem().string() + "_fit" + points_file.extension().string();
  if (points_file.extension().empty())
    name += ".csv";
  return points_file.parent_path() / name;
}

} // namespace gsmi
