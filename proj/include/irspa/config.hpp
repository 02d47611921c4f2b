#ifndef IRSPA_CONFIG_HPP
#define IRSPA_CONFIG_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "irspa/channel.hpp"
#include "irspa/numerics.hpp"

namespace irspa {

struct SolverSettings {
  std::size_t k = 256;
  std::vector<std::size_t> k_sweep{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
  double xi = 1e-8;
  std::size_t max_iter = 100;
  double es_step = 1e-4;
  std::vector<double> fixed_betas{0.8, 0.9};
  double newton_start = 0.5;
  double beta = 0.8;  // allocation used by `solve --method FIXED`
};

/// Everything an experiment run depends on. Powers stay in dBm here and are
/// converted to watts by system_params().
struct ExperimentConfig {
  Geometry geometry;
  std::size_t m = 2;
  std::vector<std::size_t> n_list;   // empty: per-experiment default
  std::vector<double> p_max_dbm;     // empty: per-experiment default
  double sigma_i_dbm = -100.0;
  double sigma_n_dbm = -100.0;
  std::size_t trials = 500;
  Seed seed{1};
  SolverSettings solver;
  std::size_t beta_grid = 201;
  std::string output_path;

  void validate() const;
  SystemParams system_params(std::size_t n, double p_max_dbm) const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies `key = value` lines onto cfg. Lists are comma-separated and `#`
/// starts a comment. `source` names the input in error messages.
void apply_config_text(std::string_view text, ExperimentConfig& cfg,
                       std::string_view source = "<config>");

void load_config_file(const std::string& path, ExperimentConfig& cfg);

/// Applies a single setting; throws ConfigError naming the key on failure.
void apply_config_value(std::string_view key, std::string_view value, ExperimentConfig& cfg);

}  // namespace irspa

#endif  // IRSPA_CONFIG_HPP
