#ifndef IRSPA_EXPERIMENT_HPP
#define IRSPA_EXPERIMENT_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "irspa/config.hpp"
#include "irspa/snr_model.hpp"
#include "irspa/solvers.hpp"

namespace irspa {

/// One aggregate line of an experiment table.
struct ResultRow {
  std::string experiment;
  std::string x_name;
  double x_value = 0.0;
  double p_max_dbm = 0.0;
  std::string method;
  double mean_rate_bits = 0.0;
  double stderr_bits = 0.0;
  std::size_t trials = 0;
};

/// rows[i] aggregates per_trial[i]; per_trial[i][t] is the rate of trial t.
struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<std::vector<double>> per_trial;
};

// Per-experiment defaults used when the config leaves N or P_max unset.
inline const std::vector<std::size_t> kBetaSweepN{128};
inline const std::vector<double> kBetaSweepPmaxDbm{20.0, 30.0, 40.0};
inline const std::vector<std::size_t> kKSweepN{16};
inline const std::vector<double> kKSweepPmaxDbm{20.0, 30.0, 40.0};
inline const std::vector<std::size_t> kNSweepN{4, 8, 16, 32, 64, 128};
inline const std::vector<double> kNSweepPmaxDbm{30.0};
inline constexpr std::size_t kSolveN = 16;
inline constexpr double kSolvePmaxDbm = 30.0;

/// Seed of trial `trial`'s channel draw. Every method, K value and P_max in an
/// experiment sees the same draw for a given trial index.
Seed trial_channel_seed(Seed master, std::size_t trial);
/// Seed of the EMRIN start sequence of trial `trial` (shared across K values).
Seed trial_start_seed(Seed master, std::size_t trial);

struct TrialInstance {
  SystemParams params;
  ChannelSet channels;
  Beamformers beamformers;
  Coefficients coefficients;
};

TrialInstance make_trial(const ExperimentConfig& cfg, std::size_t trial, std::size_t n,
                         double p_max_dbm);

/// Mean exact and Taylor-approximate rate over a uniform beta grid.
ExperimentResult run_rate_vs_beta(const ExperimentConfig& cfg);
/// EMRIN rate for every K in the sweep, with the ES reference repeated per K.
ExperimentResult run_rate_vs_k(const ExperimentConfig& cfg);
/// ES, EMRIN, TPA, NEWTON and the fixed allocations across N.
ExperimentResult run_rate_vs_n(const ExperimentConfig& cfg);

Method parse_method(const std::string& tag);

struct SingleSolve {
  std::size_t n = 0;
  double p_max_dbm = 0.0;
  SystemParams params;
  Coefficients coefficients;
  SolveResult result;
};

/// One channel draw (trial 0 of cfg.seed) solved by `method`.
SingleSolve run_single_solve(const ExperimentConfig& cfg, Method method);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_solve_report(std::ostream& out, const SingleSolve& solve);

/// %.12g, independent of the global locale.
std::string format_number(double value);

}  // namespace irspa

#endif  // IRSPA_EXPERIMENT_HPP
