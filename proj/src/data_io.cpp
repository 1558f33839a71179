#include "wcert/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "random.hpp"

namespace wcert {
namespace {

constexpr double kMinAcceptance = 1e-4;
constexpr double kMargin = 0.01;

void check_dimension(std::size_t d, const SupportBox& box) {
  if (d < 1) throw std::invalid_argument("generator: dimension must be >= 1");
  if (box.dimension() != d) throw std::invalid_argument("generator: dimension does not match the support box");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double axis_mass(double mean, double sigma, double lo, double hi) {
  return normal_cdf((hi - mean) / sigma) - normal_cdf((lo - mean) / sigma);
}

double component_box_mass(const GaussianComponent& c, const SupportBox& box) {
  double mass = 1.0;
  for (std::size_t k = 0; k < box.dimension(); ++k) mass *= axis_mass(c.mean[k], c.sigma, box.lower(k), box.upper(k));
  return mass;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Dataset gen_truncated_gaussian(std::size_t n, std::size_t d, double sigma, const SupportBox& box, std::uint64_t seed) {
  GaussianComponent c;
  c.mean = box.center();
  c.sigma = sigma;
  c.weight = 1.0;
  check_dimension(d, box);
  return gen_gaussian_mixture(n, d, {c}, box, seed);
}

Dataset gen_uniform(std::size_t n, std::size_t d, double diameter, const SupportBox& box, std::uint64_t seed) {
  check_dimension(d, box);
  if (n < 1) throw std::invalid_argument("gen_uniform: n must be >= 1");
  if (!(diameter > 0.0) || diameter > 2.0 * box.half_width())
    throw std::invalid_argument("gen_uniform: diameter must lie in (0, box L_inf diameter]");
  std::mt19937_64 rng(seed);
  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) x(i, k) = box.center()[k] + (detail::uniform01(rng) - 0.5) * diameter;
  return Dataset(std::move(x));
}

Dataset gen_gaussian_mixture(std::size_t n, std::size_t d, const std::vector<GaussianComponent>& components,
                             const SupportBox& box, std::uint64_t seed) {
  check_dimension(d, box);
  if (n < 1) throw std::invalid_argument("gen_gaussian_mixture: n must be >= 1");
  if (components.empty()) throw std::invalid_argument("gen_gaussian_mixture: no components");
  double total_weight = 0.0;
  double acceptance = 0.0;
  for (const auto& c : components) {
    if (c.mean.size() != d) throw std::invalid_argument("gen_gaussian_mixture: component mean has wrong dimension");
    if (!(c.sigma > 0.0)) throw std::invalid_argument("gaussian generator: sigma must be > 0");
    if (!(c.weight >= 0.0)) throw std::invalid_argument("gen_gaussian_mixture: negative weight");
    total_weight += c.weight;
    acceptance += c.weight * component_box_mass(c, box);
  }
  if (std::abs(total_weight - 1.0) > 1e-9) throw std::invalid_argument("gen_gaussian_mixture: weights must sum to 1");
  if (acceptance < kMinAcceptance)
    throw std::invalid_argument("gaussian generator: acceptance probability below 1e-4 (box too small for sigma)");

  std::vector<double> cumulative;
  double running = 0.0;
  for (const auto& c : components) cumulative.push_back(running += c.weight);

  std::mt19937_64 rng(seed);
  detail::NormalSource normal;
  Matrix x(n, d);
  std::vector<double> point(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      std::size_t which = components.size() - 1;
      if (components.size() > 1) {
        const double u = detail::uniform01(rng) * total_weight;
        which = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        which = std::min(which, components.size() - 1);
      }
      const GaussianComponent& c = components[which];
      for (std::size_t k = 0; k < d; ++k) point[k] = c.mean[k] + c.sigma * normal(rng);
      if (box.contains(point)) break;
    }
    std::copy(point.begin(), point.end(), x.row(i).begin());
  }
  return Dataset(std::move(x));
}

std::vector<GaussianComponent> default_mixture(std::size_t d) {
  return {GaussianComponent{std::vector<double>(d, -0.2), 0.05, 0.5},
          GaussianComponent{std::vector<double>(d, 0.2), 0.05, 0.5}};
}

double gaussian_box_mass(double sigma, const SupportBox& box) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_box_mass: sigma must be > 0");
  return component_box_mass(GaussianComponent{box.center(), sigma, 1.0}, box);
}

double sigma_for_box_mass(double mass, const SupportBox& box) {
  if (!(mass > 0.0 && mass < 1.0)) throw std::invalid_argument("sigma_for_box_mass: mass must lie in (0, 1)");
  // Mass decreases in sigma; bisect on log(sigma).
  double lo = std::log(box.half_width()) - 40.0;
  double hi = std::log(box.half_width()) + 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_box_mass(std::exp(mid), box) > mass) lo = mid;
    else hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

double uniform_diameter_for_volume_ratio(double ratio, const SupportBox& box) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw std::invalid_argument("uniform_diameter_for_volume_ratio: ratio in (0, 1]");
  return 2.0 * box.half_width() * std::pow(ratio, 1.0 / static_cast<double>(box.dimension()));
}

Dataset load_csv(const std::string& path, DatasetRole role) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      columns = split(line).size();
      break;
    }
  }
  if (columns == 0) throw ParseError(path, line_no, "missing header row");

  Matrix x;
  std::vector<double> row(columns);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != columns)
      throw ParseError(path, line_no,
                       "expected " + std::to_string(columns) + " columns, found " + std::to_string(cells.size()));
    for (std::size_t k = 0; k < columns; ++k) {
      const std::string& cell = cells[k];
      double value = 0.0;
      const char* begin = cell.data();
      const char* end = begin + cell.size();
      if (!cell.empty() && *begin == '+') ++begin;
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
        throw ParseError(path, line_no, "non-numeric cell '" + cell + "' in column " + std::to_string(k + 1));
      row[k] = value;
    }
    x.append_row(row);
  }
  if (x.rows() == 0) throw ParseError(path, line_no, "no data rows");
  return Dataset(std::move(x), role);
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (std::size_t k = 0; k < data.dimension(); ++k) out << (k ? "," : "") << "x" << k + 1;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t k = 0; k < data.dimension(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", data.points()(i, k));
      out << (k ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

std::vector<double> AffineMap::apply(std::span<const double> x) const {
  if (x.size() != scale.size()) throw std::invalid_argument("AffineMap: dimension mismatch");
  std::vector<double> y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = scale[k] * x[k] + offset[k];
  return y;
}

std::vector<double> AffineMap::inverse(std::span<const double> y) const {
  if (y.size() != scale.size()) throw std::invalid_argument("AffineMap: dimension mismatch");
  std::vector<double> x(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) x[k] = (y[k] - offset[k]) / scale[k];
  return x;
}

double AffineMap::original_units_factor() const {
  double factor = 0.0;
  for (double s : scale) factor = std::max(factor, 1.0 / s);
  return factor;
}

bool AffineMap::is_identity() const {
  for (std::size_t k = 0; k < scale.size(); ++k)
    if (scale[k] != 1.0 || offset[k] != 0.0) return false;
  return true;
}

NormalizedData normalize_to_box(const Dataset& data, const SupportBox& target) {
  const std::size_t d = data.dimension();
  if (target.dimension() != d) throw std::invalid_argument("normalize_to_box: dimension mismatch");
  AffineMap map{std::vector<double>(d, 1.0), std::vector<double>(d, 0.0)};
  bool inside = true;
  for (std::size_t i = 0; i < data.size() && inside; ++i) inside = target.contains(data.points().row(i));
  if (inside) return {data, map};

  const double half = target.half_width() * (1.0 - kMargin);
  for (std::size_t k = 0; k < d; ++k) {
    double lo = data.points()(0, k);
    double hi = lo;
    for (std::size_t i = 1; i < data.size(); ++i) {
      lo = std::min(lo, data.points()(i, k));
      hi = std::max(hi, data.points()(i, k));
    }
    const double mid = 0.5 * (lo + hi);
    map.scale[k] = hi > lo ? 2.0 * half / (hi - lo) : 1.0;
    map.offset[k] = target.center()[k] - map.scale[k] * mid;
  }
  return {apply_map(data, map), map};
}

Dataset apply_map(const Dataset& data, const AffineMap& map) {
  Matrix y(data.size(), data.dimension());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::vector<double> v = map.apply(data.points().row(i));
    std::copy(v.begin(), v.end(), y.row(i).begin());
  }
  return Dataset(std::move(y), data.role());
}

}  // namespace wcert
