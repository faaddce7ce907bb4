#include "gsmi/scaling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace gsmi {

double scaling_variable(int sites, int size_a) {
  if (size_a <= 0 || size_a >= sites)
    throw std::invalid_argument("scaling variable needs 0 < L_A < L (L=" + std::to_string(sites) +
                                ", L_A=" + std::to_string(size_a) + ")");
  const double l = sites;
  return std::log(l / std::numbers::pi * std::sin(std::numbers::pi * size_a / l));
}

std::string FitWindow::to_string() const {
  return std::to_string(lo) + ":" + std::to_string(hi);
}

FitWindow default_window(int sites) { return FitWindow{(sites + 3) / 4, (3 * sites) / 4}; }

FitWindow parse_window(const std::string &text) {
  const auto colon = text.find(':');
  FitWindow w;
  auto parse = [&](std::string_view part, int &out) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || ptr != part.data() + part.size())
      throw std::invalid_argument("bad fit window '" + text + "' (expected lo:hi)");
  };
  if (colon == std::string::npos)
    throw std::invalid_argument("bad fit window '" + text + "' (expected lo:hi)");
  const std::string_view view(text);
  parse(view.substr(0, colon), w.lo);
  parse(view.substr(colon + 1), w.hi);
  if (w.lo > w.hi)
    throw std::invalid_argument("empty fit window '" + text + "'");
  return w;
}

std::vector<FitPoint> select_window(std::span<const FitPoint> points, const FitWindow &window) {
  std::vector<FitPoint> out;
  for (const auto &p : points)
    if (window.contains(p.size_a))
      out.push_back(p);
  return out;
}

FitResult fit_cft(std::span<const FitPoint> points) {
  FitResult r;
  r.points.assign(points.begin(), points.end());
  std::sort(r.points.begin(), r.points.end(), [](const FitPoint &a, const FitPoint &b) {
    return std::tie(a.sites, a.size_a, a.value) < std::tie(b.sites, b.size_a, b.value);
  });

  std::vector<double> x;
  x.reserve(r.points.size());
  for (const auto &p : r.points)
    x.push_back(scaling_variable(p.sites, p.size_a));
  if (x.size() < 2)
    throw std::invalid_argument("CFT fit needs at least two points");

  const double n = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += r.points[i].value;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (r.points[i].value - mean_y);
  }
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (!(*hi - *lo > 1e-12 * std::max(1.0, std::abs(*hi))))
    throw std::invalid_argument(
        "rank-deficient CFT fit: all points share one scaling-variable value");

  const double slope = sxy / sxx;
  r.c2 = 4.0 * slope;
  r.b2 = mean_y - slope * mean_x;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double res = r.points[i].value - (slope * x[i] + r.b2);
    r.residuals.push_back(res);
    ss += res * res;
  }
  r.rms = std::sqrt(ss / n);
  return r;
}

} // namespace gsmi
