// wcert: generate data, certify Wasserstein bounds, sweep M, run the baseline.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wcert/data_io.hpp"
#include "wcert/pipeline.hpp"
#include "wcert/serialize.hpp"

namespace {

using namespace wcert;
using nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  double rho = 1.0;
  double beta = 1e-6;
  std::string norm = "2";
  std::uint64_t seed = 0;
  double timeout_s = 600.0;
  double neighbor_frac = 0.05;
  double half_width = 0.5;
  std::string config_path;

  Config config(std::size_t dimension) const {
    Config cfg;
    cfg.rho = rho;
    cfg.beta = beta;
    cfg.norm_order = parse_norm_order(norm);
    cfg.dimension = dimension;
    cfg.rng_seed = seed;
    cfg.neighbor_fraction = neighbor_frac;
    cfg.validate();
    return cfg;
  }
  BoundOptions options() const {
    BoundOptions opt;
    opt.milp.time_limit_s = timeout_s;
    return opt;
  }
  SupportBox box(std::size_t d) const { return SupportBox(std::vector<double>(d, 0.0), half_width); }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--rho", f.rho, "Wasserstein order")->check(CLI::IsMember({1.0, 2.0}));
  cmd->add_option("--beta", f.beta, "confidence level, in (0, 1)")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--norm", f.norm, "ground norm")->check(CLI::IsMember({"1", "2", "inf"}));
  cmd->add_option("--seed", f.seed, "seed for clustering and generated data");
  cmd->add_option("--timeout-s", f.timeout_s, "per-solve time limit in seconds")->check(CLI::NonNegativeNumber);
  cmd->add_option("--neighbor-frac", f.neighbor_frac, "radius-growth neighbor rank as a fraction of M")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--box-half-width", f.half_width, "half width of the support box centered at 0")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--config", f.config_path, "key=value file with moment constants (E1, E2)");
}

std::map<std::string, double> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) throw ParseError(path, line_no, "expected key=value");
    std::string key = line.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
              key.end());
    try {
      std::size_t used = 0;
      const std::string value = line.substr(eq + 1);
      out[key] = std::stod(value, &used);
      if (value.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "non-numeric value for '" + key + "'");
    }
  }
  return out;
}

double moment_constant(const CommonFlags& f, std::optional<double> direct) {
  if (direct) return *direct;
  if (f.config_path.empty()) throw UsageError("the fournier baseline needs --moment or --config with E1/E2");
  const auto values = read_key_values(f.config_path);
  const std::string key = "E" + std::to_string(static_cast<int>(f.rho));
  const auto it = values.find(key);
  if (it == values.end()) throw std::runtime_error("config '" + f.config_path + "' has no entry " + key);
  return it->second;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

RecordContext context(const CommonFlags& f, std::size_t M, std::int64_t N) { return {f.rho, f.beta, M, N}; }

// ---------------------------------------------------------------- generate

struct GenerateFlags {
  std::string dist;
  std::size_t d = 2;
  std::size_t n = 1000;
  std::optional<double> sigma2;
  std::optional<double> diameter;
  std::uint64_t seed = 0;
  double half_width = 0.5;
  std::string out;
  std::string manifest;
};

Dataset generate_dataset(const GenerateFlags& g, std::uint64_t seed, json* params) {
  const SupportBox box(std::vector<double>(g.d, 0.0), g.half_width);
  if (g.dist == "gaussian") {
    if (!g.sigma2) throw UsageError("--dist gaussian needs --sigma2");
    if (params) *params = {{"sigma2", *g.sigma2}};
    return gen_truncated_gaussian(g.n, g.d, std::sqrt(*g.sigma2), box, seed);
  }
  if (g.dist == "uniform") {
    if (!g.diameter) throw UsageError("--dist uniform needs --diameter");
    if (params) *params = {{"diameter", *g.diameter}};
    return gen_uniform(g.n, g.d, *g.diameter, box, seed);
  }
  const auto comps = default_mixture(g.d);
  if (params) {
    json list = json::array();
    for (const auto& c : comps) list.push_back({{"mean", c.mean}, {"sigma", c.sigma}, {"weight", c.weight}});
    *params = {{"components", list}};
  }
  return gen_gaussian_mixture(g.n, g.d, comps, box, seed);
}

void add_generator_flags(CLI::App* cmd, GenerateFlags& g) {
  cmd->add_option("--dist", g.dist, "gaussian, uniform or mixture")
      ->check(CLI::IsMember({"gaussian", "uniform", "mixture"}));
  cmd->add_option("--d", g.d, "dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--sigma2", g.sigma2, "gaussian variance per axis")->check(CLI::PositiveNumber);
  cmd->add_option("--diameter", g.diameter, "uniform L_inf diameter")->check(CLI::PositiveNumber);
}

int run_generate(const GenerateFlags& g) {
  json params;
  const Dataset data = generate_dataset(g, g.seed, &params);
  save_csv(data, g.out);
  if (!g.manifest.empty()) write_text(g.manifest, dataset_manifest(g.n, g.d, g.dist, params, g.seed).dump(2) + "\n");
  std::cerr << "wrote " << data.size() << " x " << data.dimension() << " samples to " << g.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- bound

struct BoundFlags {
  std::string train;
  std::string data;
  std::size_t M = 20;
  std::string method = "theorem1";
  std::optional<double> moment;
  bool normalize = false;
  std::string out;
  std::string partition_out;
};

int run_bound(const BoundFlags& b, const CommonFlags& f) {
  const BoundMethod method = parse_bound_method(b.method);
  Dataset data = load_csv(b.data, DatasetRole::estimation);
  const Config cfg = f.config(data.dimension());
  const SupportBox box = f.box(data.dimension());
  const auto N = static_cast<std::int64_t>(data.size());

  if (method == BoundMethod::fournier) {
    const BoundResult r = fournier_baseline(N, f.beta, cfg, box.diameter(cfg.norm_order), moment_constant(f, b.moment));
    json rec = bound_record(r, context(f, 0, N));
    write_text(b.out, rec.dump(2) + "\n");
    return 0;
  }

  if (b.train.empty()) throw UsageError("--train is required for " + b.method);
  Dataset train = load_csv(b.train, DatasetRole::training);
  if (train.dimension() != data.dimension()) throw std::invalid_argument("training and estimation dimensions differ");
  std::optional<AffineMap> map;
  if (b.normalize) {
    NormalizedData fitted = normalize_to_box(train, box);
    map = fitted.map;
    train = fitted.data;
    data = apply_map(data, *map);
  }

  try {
    const Certificate cert = certify(train, data, b.M, cfg, box, method, f.options());
    json rec = bound_record(cert.bound, context(f, b.M, N));
    rec["seed"] = f.seed;
    rec["norm"] = f.norm;
    if (map) {
      rec["units_factor"] = map->original_units_factor();
      rec["value_original_units"] = cert.bound.value * map->original_units_factor();
    }
    if (!b.partition_out.empty()) write_text(b.partition_out, to_json(cert.partition).dump(2) + "\n");
    write_text(b.out, rec.dump(2) + "\n");
    return 0;
  } catch (const SolverLimitError& e) {
    json rec = failed_record(method, context(f, b.M, N), to_string(e.report().status), e.report());
    rec["seed"] = f.seed;
    write_text(b.out, rec.dump(2) + "\n");
    std::cerr << "wcert: " << e.what() << "\n";
    return kExitLimit;
  }
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
  std::string train;
  std::string data;
  GenerateFlags gen;
  std::size_t n_train = 1000;
  std::vector<std::size_t> Ms;
  std::vector<std::string> methods{"theorem1"};
  std::size_t seeds = 1;
  int jobs = 1;
  std::string out;
  std::string summary;
};

struct Cell {
  std::string method;
  std::size_t M = 0;
  std::uint64_t seed = 0;
  std::int64_t N = 0;
  double value = std::numeric_limits<double>::quiet_NaN();
  double runtime_ms = 0.0;
  std::string status = "optimal";
};

int run_sweep(const SweepFlags& s, const CommonFlags& f) {
  const bool from_files = !s.data.empty();
  if (!from_files && s.gen.dist.empty()) throw UsageError("sweep needs --data/--train or --dist");
  if (from_files && s.train.empty()) throw UsageError("--train is required with --data");
  for (const auto& m : s.methods)
    if (parse_bound_method(m) == BoundMethod::fournier) throw UsageError("use the baseline subcommand for fournier");

  // Datasets per seed: shared files, or fresh draws (train and estimation use distinct streams).
  std::vector<std::pair<Dataset, Dataset>> sets;
  for (std::size_t k = 0; k < s.seeds; ++k) {
    const std::uint64_t seed = f.seed + k;
    if (from_files) {
      if (sets.empty()) sets.emplace_back(load_csv(s.train, DatasetRole::training), load_csv(s.data));
      else sets.push_back(sets.front());
    } else {
      GenerateFlags g = s.gen;
      g.n = s.n_train;
      Dataset train = generate_dataset(g, 2 * seed, nullptr).with_role(DatasetRole::training);
      g.n = s.gen.n;
      sets.emplace_back(std::move(train), generate_dataset(g, 2 * seed + 1, nullptr));
    }
  }

  std::vector<Cell> cells;
  for (const auto& m : s.methods)
    for (std::size_t M : s.Ms)
      for (std::size_t k = 0; k < s.seeds; ++k) cells.push_back(Cell{m, M, f.seed + k});

  const BoundOptions options = f.options();
#pragma omp parallel for schedule(dynamic, 1) num_threads(s.jobs)
  for (std::size_t c = 0; c < cells.size(); ++c) {
    Cell& cell = cells[c];
    const auto& [train, data] = sets[cell.seed - f.seed];
    CommonFlags local = f;
    local.seed = cell.seed;
    const Config cfg = local.config(data.dimension());
    cell.N = static_cast<std::int64_t>(data.size());
    const auto start = std::chrono::steady_clock::now();
    try {
      cell.value = certify(train, data, cell.M, cfg, f.box(data.dimension()), parse_bound_method(cell.method), options)
                       .bound.value;
    } catch (const SolverLimitError& e) {
      cell.status = to_string(e.report().status);
    } catch (const std::exception& e) {
      cell.status = std::string("error: ") + e.what();
    }
    cell.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  // Shortest text that reads back to the same double.
  const auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  std::ostringstream csv;
  csv << "method,M,N,rho,beta,seed,value,runtime_ms\n";
  bool all_ok = true;
  for (const Cell& c : cells) {
    csv << c.method << ',' << c.M << ',' << c.N << ',' << num(f.rho) << ',' << num(f.beta) << ',' << c.seed << ',';
    if (c.status == "optimal") csv << num(c.value);
    else all_ok = false;
    csv << ',' << num(c.runtime_ms) << '\n';
    if (c.status != "optimal")
      std::cerr << "wcert: " << c.method << " M=" << c.M << " seed=" << c.seed << ": " << c.status << "\n";
  }
  write_text(s.out, csv.str());

  json summary = json::array();
  for (const auto& m : s.methods) {
    double best_mean = std::numeric_limits<double>::infinity();
    std::size_t best_M = 0;
    json per_M = json::array();
    for (std::size_t M : s.Ms) {
      std::vector<double> v;
      for (const Cell& c : cells)
        if (c.method == m && c.M == M && c.status == "optimal") v.push_back(c.value);
      if (v.empty()) continue;
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
      std::cout << m << " M=" << M << " mean=" << mean << " std=" << sd << " n=" << v.size() << "\n";
      per_M.push_back({{"M", M}, {"mean", mean}, {"std", sd}, {"count", v.size()}});
      if (mean < best_mean) {
        best_mean = mean;
        best_M = M;
      }
    }
    if (best_M) std::cout << m << " best M=" << best_M << " mean=" << best_mean << "\n";
    summary.push_back({{"method", m}, {"cells", per_M}, {"best_M", best_M ? json(best_M) : json(nullptr)},
                       {"best_mean", best_M ? json(best_mean) : json(nullptr)}});
  }
  if (!s.summary.empty()) write_text(s.summary, summary.dump(2) + "\n");
  return all_ok ? 0 : kExitLimit;
}

// ---------------------------------------------------------------- baseline

struct BaselineFlags {
  std::int64_t N = 0;
  std::size_t d = 2;
  std::optional<double> moment;
  std::string out;
};

int run_baseline(const BaselineFlags& b, const CommonFlags& f) {
  const Config cfg = f.config(b.d);
  const double diameter = f.box(b.d).diameter(cfg.norm_order);
  const BoundResult r = fournier_baseline(b.N, f.beta, cfg, diameter, moment_constant(f, b.moment));
  json rec = bound_record(r, context(f, 0, b.N));
  rec["diameter"] = diameter;
  write_text(b.out, rec.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified Wasserstein bounds between an unknown distribution and a clusterized sample"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "write a synthetic sample as CSV");
  add_generator_flags(generate, gen);
  generate->get_option("--dist")->required();
  generate->add_option("--n", gen.n, "number of samples")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--box-half-width", gen.half_width, "half width of the support box")->check(CLI::PositiveNumber);
  generate->add_option("--out", gen.out, "output CSV")->required();
  generate->add_option("--manifest", gen.manifest, "optional JSON manifest path");

  CommonFlags bound_common;
  BoundFlags bnd;
  auto* bound = app.add_subcommand("bound", "certify one bound from a training and an estimation CSV");
  add_common(bound, bound_common);
  bound->add_option("--train", bnd.train, "training CSV (partition)");
  bound->add_option("--data", bnd.data, "estimation CSV (weights and intervals)")->required();
  bound->add_option("--M", bnd.M, "number of regions including the remainder")->check(CLI::PositiveNumber);
  bound->add_option("--method", bnd.method, "bound")->check(CLI::IsMember({"theorem1", "prop2", "analytic", "fournier"}));
  bound->add_option("--moment", bnd.moment, "moment constant for the fournier baseline")->check(CLI::NonNegativeNumber);
  bound->add_flag("--normalize", bnd.normalize, "fit an affine map of the training data onto the box");
  bound->add_option("--partition-out", bnd.partition_out, "optional JSON dump of the partition");
  bound->add_option("--out", bnd.out, "output JSON (stdout if omitted)");

  CommonFlags sweep_common;
  SweepFlags swp;
  auto* sweep = app.add_subcommand("sweep", "grid over M and seeds; CSV of per-cell records");
  add_common(sweep, sweep_common);
  add_generator_flags(sweep, swp.gen);
  sweep->add_option("--train", swp.train, "training CSV (instead of generated data)");
  sweep->add_option("--data", swp.data, "estimation CSV (instead of generated data)");
  sweep->add_option("--n", swp.gen.n, "generated estimation samples per seed")->check(CLI::PositiveNumber);
  sweep->add_option("--n-train", swp.n_train, "generated training samples per seed")->check(CLI::PositiveNumber);
  sweep->add_option("--M", swp.Ms, "region counts, comma separated")->delimiter(',')->required()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--method", swp.methods, "bounds, comma separated")->delimiter(',')
      ->check(CLI::IsMember({"theorem1", "prop2", "analytic"}));
  sweep->add_option("--seeds", swp.seeds, "number of seeds, starting at --seed")->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", swp.jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--summary", swp.summary, "optional JSON with mean/std per cell and the best M");
  sweep->add_option("--out", swp.out, "output CSV")->required();

  CommonFlags base_common;
  BaselineFlags base;
  auto* baseline = app.add_subcommand("baseline", "Fournier-type concentration bound");
  add_common(baseline, base_common);
  baseline->add_option("--N", base.N, "sample size")->required()->check(CLI::PositiveNumber);
  baseline->add_option("--d", base.d, "dimension")->check(CLI::PositiveNumber);
  baseline->add_option("--moment", base.moment, "moment constant E_rho")->check(CLI::NonNegativeNumber);
  baseline->add_option("--out", base.out, "output JSON (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*bound) return run_bound(bnd, bound_common);
    if (*sweep) return run_sweep(swp, sweep_common);
    if (*baseline) return run_baseline(base, base_common);
  } catch (const UsageError& e) {
    std::cerr << "wcert: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "wcert: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
