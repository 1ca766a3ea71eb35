#include "ams/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ams {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

const std::set<std::string> kKnownKeys = {
    "nt", "nx", "dt", "dx", "mass_system", "mass_probe",
    "target_profile", "target_t_lo", "target_t_hi", "target_x_start", "target_x_len",
    "target_amplitude", "target_seed",
    "n_t_lo", "n_t_hi", "n_x_start", "n_x_len", "l_t_lo", "l_t_hi",
    "order_k", "lambda_grid",
    "reference_slice", "shift_amplitude", "shift_t_lo", "shift_t_hi", "shift_x_start",
    "shift_x_len",
    "epsilon", "delta", "coverage_lambda", "replications", "seed",
    "swap_sigma_minus", "swap_sigma_plus", "swap_source_t_lo", "swap_source_t_hi",
    "swap_source_x_start", "swap_source_x_len",
    "out_dir",
};

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), ErrorKind::invalid, "config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    require(eq != std::string::npos, ErrorKind::invalid,
            "config: line " + std::to_string(lineno) + " is not 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    require(kKnownKeys.count(key) != 0, ErrorKind::invalid, "config: unknown key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return std::stoi(it->second);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return std::stod(it->second);
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key,
                                                const std::vector<double>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::string item;
  std::istringstream ss(it->second);
  while (std::getline(ss, item, ',')) out.push_back(std::stod(trim(item)));
  require(!out.empty(), ErrorKind::invalid, "config: empty list for " + key);
  return out;
}

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& kv) {
  ExperimentConfig c;
  c.nt = kv.get_int("nt", c.nt);
  c.nx = kv.get_int("nx", c.nx);
  c.dt = kv.get_double("dt", c.dt);
  c.dx = kv.get_double("dx", c.dx);
  c.mass_system = kv.get_double("mass_system", c.mass_system);
  c.mass_probe = kv.get_double("mass_probe", c.mass_probe);
  c.target_profile = kv.get_string("target_profile", c.target_profile);
  require(c.target_profile == "bump" || c.target_profile == "random", ErrorKind::invalid,
          "config: target_profile must be bump or random");
  c.target_t_lo = kv.get_int("target_t_lo", c.target_t_lo);
  c.target_t_hi = kv.get_int("target_t_hi", c.target_t_hi);
  c.target_x_start = kv.get_int("target_x_start", c.target_x_start);
  c.target_x_len = kv.get_int("target_x_len", c.target_x_len);
  c.target_amplitude = kv.get_double("target_amplitude", c.target_amplitude);
  c.target_seed = std::uint64_t(kv.get_int("target_seed", int(c.target_seed)));
  c.n_t_lo = kv.get_int("n_t_lo", c.n_t_lo);
  c.n_t_hi = kv.get_int("n_t_hi", c.n_t_hi);
  c.n_x_start = kv.get_int("n_x_start", c.n_x_start);
  c.n_x_len = kv.get_int("n_x_len", c.n_x_len);
  c.l_t_lo = kv.get_int("l_t_lo", c.l_t_lo);
  c.l_t_hi = kv.get_int("l_t_hi", c.l_t_hi);
  c.order_k = kv.get_int("order_k", c.order_k);
  c.lambda_grid = kv.get_doubles("lambda_grid", c.lambda_grid);
  c.reference_slice = kv.get_int("reference_slice", c.reference_slice);
  c.shift_amplitude = kv.get_double("shift_amplitude", c.shift_amplitude);
  c.shift_t_lo = kv.get_int("shift_t_lo", c.shift_t_lo);
  c.shift_t_hi = kv.get_int("shift_t_hi", c.shift_t_hi);
  c.shift_x_start = kv.get_int("shift_x_start", c.shift_x_start);
  c.shift_x_len = kv.get_int("shift_x_len", c.shift_x_len);
  c.epsilon = kv.get_double("epsilon", c.epsilon);
  c.delta = kv.get_double("delta", c.delta);
  c.coverage_lambda = kv.get_double("coverage_lambda", c.coverage_lambda);
  c.replications = kv.get_int("replications", c.replications);
  c.seed = std::uint64_t(kv.get_int("seed", int(c.seed)));
  c.swap_sigma_minus = kv.get_int("swap_sigma_minus", c.swap_sigma_minus);
  c.swap_sigma_plus = kv.get_int("swap_sigma_plus", c.swap_sigma_plus);
  c.swap_source_t_lo = kv.get_int("swap_source_t_lo", c.swap_source_t_lo);
  c.swap_source_t_hi = kv.get_int("swap_source_t_hi", c.swap_source_t_hi);
  c.swap_source_x_start = kv.get_int("swap_source_x_start", c.swap_source_x_start);
  c.swap_source_x_len = kv.get_int("swap_source_x_len", c.swap_source_x_len);
  c.out_dir = kv.get_string("out_dir", c.out_dir);
  return c;
}

SpacetimeGrid ExperimentConfig::grid() const {
  SpacetimeGrid g;
  g.nt = nt;
  g.nx = nx;
  g.dt = dt;
  g.dx = dx;
  g.components = 1;
  g.validate();
  return g;
}

Region ExperimentConfig::region_N() const {
  return Region::box(n_t_lo, n_t_hi, {n_x_start, n_x_len});
}

Region ExperimentConfig::region_L() const { return Region::full_slab(l_t_lo, l_t_hi); }

}  // namespace ams
