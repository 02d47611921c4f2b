#include "irspa/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace irspa {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ConfigError("field '" + std::string(key) + "': cannot parse '" + std::string(value) +
                    "' as " + std::string(what));
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out)) {
    bad_value(key, value, "a finite real number");
  }
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    bad_value(key, value, "a non-negative integer");
  }
  return out;
}

std::vector<double> parse_reals(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (std::string_view item : split_list(value)) out.push_back(parse_real(key, item));
  return out;
}

std::vector<std::size_t> parse_counts(std::string_view key, std::string_view value) {
  std::vector<std::size_t> out;
  for (std::string_view item : split_list(value)) out.push_back(parse_u64(key, item));
  return out;
}

Point3 parse_point(std::string_view key, std::string_view value) {
  const std::vector<double> xs = parse_reals(key, value);
  if (xs.size() != 3) bad_value(key, value, "three comma-separated coordinates");
  return {xs[0], xs[1], xs[2]};
}

}  // namespace

void ExperimentConfig::validate() const {
  geometry.validate();
  if (m < 1) throw ConfigError("field 'm': must be at least 1");
  if (trials < 1) throw ConfigError("field 'trials': must be at least 1");
  if (beta_grid < 2) throw ConfigError("field 'beta_grid': must be at least 2");
  for (std::size_t n : n_list) {
    if (n < 1) throw ConfigError("field 'n': every entry must be at least 1");
  }
  if (solver.k < 1) throw ConfigError("field 'k': must be at least 1");
  if (solver.k_sweep.empty()) throw ConfigError("field 'k_sweep': list is empty");
  for (std::size_t k : solver.k_sweep) {
    if (k < 1) throw ConfigError("field 'k_sweep': every entry must be at least 1");
  }
  if (!(solver.xi > 0.0)) throw ConfigError("field 'xi': must be positive");
  if (solver.max_iter < 1) throw ConfigError("field 'max_iter': must be at least 1");
  if (!(solver.es_step > 0.0 && solver.es_step <= 0.5)) {
    throw ConfigError("field 'es_step': must lie in (0, 0.5]");
  }
  if (solver.fixed_betas.empty()) throw ConfigError("field 'fixed_betas': list is empty");
  for (double b : solver.fixed_betas) {
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("field 'fixed_betas': entries must lie in [0, 1]");
  }
  if (!(solver.newton_start >= 0.0 && solver.newton_start <= 1.0)) {
    throw ConfigError("field 'newton_start': must lie in [0, 1]");
  }
  if (!(solver.beta >= 0.0 && solver.beta <= 1.0)) {
    throw ConfigError("field 'beta': must lie in [0, 1]");
  }
}

SystemParams ExperimentConfig::system_params(std::size_t n, double p_max_dbm_value) const {
  SystemParams params;
  params.m = m;
  params.n = n;
  params.p_max = db_to_watt(p_max_dbm_value);
  params.sigma_i_sq = db_to_watt(sigma_i_dbm);
  params.sigma_n_sq = db_to_watt(sigma_n_dbm);
  params.validate();
  return params;
}

void apply_config_value(std::string_view key, std::string_view value, ExperimentConfig& cfg) {
  if (value.empty()) throw ConfigError("field '" + std::string(key) + "': missing value");
  if (key == "bs_pos") {
    cfg.geometry.bs_pos = parse_point(key, value);
  } else if (key == "irs_pos") {
    cfg.geometry.irs_pos = parse_point(key, value);
  } else if (key == "user_pos") {
    cfg.geometry.user_pos = parse_point(key, value);
  } else if (key == "alpha_g") {
    cfg.geometry.alpha_g = parse_real(key, value);
  } else if (key == "alpha_f") {
    cfg.geometry.alpha_f = parse_real(key, value);
  } else if (key == "alpha_h") {
    cfg.geometry.alpha_h = parse_real(key, value);
  } else if (key == "ref_gain_db") {
    cfg.geometry.ref_gain = db_to_linear(parse_real(key, value));
  } else if (key == "m") {
    cfg.m = parse_u64(key, value);
  } else if (key == "n") {
    cfg.n_list = parse_counts(key, value);
  } else if (key == "pmax_dbm") {
    cfg.p_max_dbm = parse_reals(key, value);
  } else if (key == "sigma_i_dbm") {
    cfg.sigma_i_dbm = parse_real(key, value);
  } else if (key == "sigma_n_dbm") {
    cfg.sigma_n_dbm = parse_real(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_u64(key, value);
  } else if (key == "seed") {
    cfg.seed = Seed{parse_u64(key, value)};
  } else if (key == "k") {
    cfg.solver.k = parse_u64(key, value);
  } else if (key == "k_sweep") {
    cfg.solver.k_sweep = parse_counts(key, value);
  } else if (key == "xi") {
    cfg.solver.xi = parse_real(key, value);
  } else if (key == "max_iter") {
    cfg.solver.max_iter = parse_u64(key, value);
  } else if (key == "es_step") {
    cfg.solver.es_step = parse_real(key, value);
  } else if (key == "fixed_betas") {
    cfg.solver.fixed_betas = parse_reals(key, value);
  } else if (key == "newton_start") {
    cfg.solver.newton_start = parse_real(key, value);
  } else if (key == "beta") {
    cfg.solver.beta = parse_real(key, value);
  } else if (key == "beta_grid") {
    cfg.beta_grid = parse_u64(key, value);
  } else if (key == "out") {
    cfg.output_path = std::string(value);
  } else {
    throw ConfigError("unknown field '" + std::string(key) + "'");
  }
}

void apply_config_text(std::string_view text, ExperimentConfig& cfg, std::string_view source) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected 'key = value', got '" + std::string(line) + "'");
    }
    try {
      apply_config_value(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), cfg);
    } catch (const ConfigError& err) {
      throw ConfigError(where + err.what());
    } catch (const std::invalid_argument& err) {
      throw ConfigError(where + err.what());
    }
  }
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(buffer.str(), cfg, path);
}

}  // namespace irspa
