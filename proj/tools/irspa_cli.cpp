// Command-line front end: Monte Carlo sweeps to CSV and single-instance solves.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irspa/experiment.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> out;
  std::optional<std::string> method;
  std::vector<std::size_t> n;
  std::vector<double> pmax_dbm;
  std::optional<std::size_t> k;
  std::vector<std::size_t> k_sweep;
  std::optional<double> es_step;
  std::optional<double> xi;
  std::optional<std::size_t> beta_grid;
  std::optional<double> beta;
  std::optional<double> ref_gain_db;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value configuration file");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--trials", o.trials, "Monte Carlo channel draws");
  cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
  cmd->add_option("--n", o.n, "IRS element count(s)")->delimiter(',');
  cmd->add_option("--pmax-dbm", o.pmax_dbm, "total power budget(s) in dBm")->delimiter(',');
  cmd->add_option("--k", o.k, "EMRIN random initializations");
  cmd->add_option("--k-sweep", o.k_sweep, "K values for rate-vs-k")->delimiter(',');
  cmd->add_option("--es-step", o.es_step, "exhaustive search grid step");
  cmd->add_option("--xi", o.xi, "Newton convergence accuracy");
  cmd->add_option("--beta-grid", o.beta_grid, "beta samples for rate-vs-beta");
  cmd->add_option("--ref-gain-db", o.ref_gain_db, "path gain at 1 m in dB");
}

irspa::ExperimentConfig build_config(const Overrides& o) {
  irspa::ExperimentConfig cfg;
  if (!o.config_path.empty()) irspa::load_config_file(o.config_path, cfg);
  if (o.seed) cfg.seed = irspa::Seed{*o.seed};
  if (o.trials) cfg.trials = *o.trials;
  if (o.out) cfg.output_path = *o.out;
  if (!o.n.empty()) cfg.n_list = o.n;
  if (!o.pmax_dbm.empty()) cfg.p_max_dbm = o.pmax_dbm;
  if (o.k) cfg.solver.k = *o.k;
  if (!o.k_sweep.empty()) cfg.solver.k_sweep = o.k_sweep;
  if (o.es_step) cfg.solver.es_step = *o.es_step;
  if (o.xi) cfg.solver.xi = *o.xi;
  if (o.beta_grid) cfg.beta_grid = *o.beta_grid;
  if (o.beta) cfg.solver.beta = *o.beta;
  if (o.ref_gain_db) cfg.geometry.ref_gain = irspa::db_to_linear(*o.ref_gain_db);
  cfg.validate();
  return cfg;
}

int emit_csv(const irspa::ExperimentConfig& cfg, const irspa::ExperimentResult& result) {
  if (cfg.output_path.empty()) {
    irspa::write_csv(std::cout, result.rows);
    return 0;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
    return 1;
  }
  irspa::write_csv(out, result.rows);
  return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power split between a base station and an active IRS"};
  app.require_subcommand(1);

  Overrides o;
  auto* beta_cmd = app.add_subcommand("rate-vs-beta", "mean exact and approximate rate versus beta");
  auto* k_cmd = app.add_subcommand("rate-vs-k", "EMRIN rate versus random initialization count");
  auto* n_cmd = app.add_subcommand("rate-vs-n", "all allocation strategies versus IRS size");
  auto* solve_cmd = app.add_subcommand("solve", "solve one channel draw and print the result");
  for (auto* cmd : {beta_cmd, k_cmd, n_cmd, solve_cmd}) add_common_options(cmd, o);
  solve_cmd->add_option("--method", o.method, "EMRIN, TPA, NEWTON, ES or FIXED")->required();
  solve_cmd->add_option("--beta", o.beta, "allocation for --method FIXED");

  CLI11_PARSE(app, argc, argv);

  try {
    const irspa::ExperimentConfig cfg = build_config(o);
    if (beta_cmd->parsed()) return emit_csv(cfg, irspa::run_rate_vs_beta(cfg));
    if (k_cmd->parsed()) return emit_csv(cfg, irspa::run_rate_vs_k(cfg));
    if (n_cmd->parsed()) return emit_csv(cfg, irspa::run_rate_vs_n(cfg));

    irspa::Method method;
    try {
      method = irspa::parse_method(*o.method);
    } catch (const std::invalid_argument& err) {
      std::cerr << "usage error: " << err.what() << '\n';
      return 2;
    }
    irspa::write_solve_report(std::cout, irspa::run_single_solve(cfg, method));
    return 0;
  } catch (const irspa::ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
