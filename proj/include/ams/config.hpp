#pragma once

#include <map>
#include <string>
#include <vector>

#include "ams/grid.hpp"

namespace ams {

// `key = value` lines, '#' comments. Unknown keys are rejected so typos in
// experiment files surface immediately.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback) const;
  void override_value(const std::string& key, const std::string& value) {
    values_[key] = value;
  }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Everything the CLI experiments need; defaults reproduce the shipped
// example configs.
struct ExperimentConfig {
  int nt = 64, nx = 64;
  double dt = 0.5, dx = 1.0;
  double mass_system = 0.3;
  double mass_probe = 0.4;

  // target smearing: box plus profile
  std::string target_profile = "bump";  // bump | random
  int target_t_lo = 17, target_t_hi = 19;
  int target_x_start = 24, target_x_len = 16;
  double target_amplitude = 1.0;
  std::uint64_t target_seed = 7;

  // regions
  int n_t_lo = 16, n_t_hi = 23;
  int n_x_start = 14, n_x_len = 36;
  int l_t_lo = 28, l_t_hi = 40;

  int order_k = 1;
  std::vector<double> lambda_grid = {0.4, 0.2, 0.1, 0.05, 0.025};

  // states
  int reference_slice = 5;
  double shift_amplitude = 0.5;
  int shift_t_lo = 8, shift_t_hi = 11;
  int shift_x_start = 24, shift_x_len = 16;

  // statistics block
  double epsilon = 0.05;
  double delta = 0.1;
  double coverage_lambda = 0.2;
  int replications = 500;
  std::uint64_t seed = 12345;

  // swap demo
  int swap_sigma_minus = 20, swap_sigma_plus = 30;
  int swap_source_t_lo = 34, swap_source_t_hi = 40;
  int swap_source_x_start = 10, swap_source_x_len = 20;

  std::string out_dir = ".";

  static ExperimentConfig from_config(const KeyValueConfig& kv);
  SpacetimeGrid grid() const;
  Region region_N() const;
  Region region_L() const;
};

}  // namespace ams
