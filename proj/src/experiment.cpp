#include "irspa/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace irspa {

namespace {

constexpr std::uint64_t kChannelStream = 0;
constexpr std::uint64_t kStartStream = 1;

struct Draw {
  ChannelSet channels;
  Beamformers beamformers;
  QuadraticForms forms;
};

Draw draw_channel(const ExperimentConfig& cfg, std::size_t trial, std::size_t n) {
  SystemParams shape;
  shape.m = cfg.m;
  shape.n = n;
  RandomStream rng(trial_channel_seed(cfg.seed, trial));
  Draw d;
  d.channels = sample_channels(cfg.geometry, shape, rng);
  d.beamformers = design_beamformers(d.channels);
  d.forms = compute_quadratic_forms(d.channels, d.beamformers);
  return d;
}

/// Collects one per-trial series per output row.
class Table {
 public:
  Table(std::string experiment, std::string x_name, std::size_t trials)
      : experiment_(std::move(experiment)), x_name_(std::move(x_name)), trials_(trials) {}

  std::size_t add_row(double x_value, double p_max_dbm, std::string method) {
    ResultRow row;
    row.experiment = experiment_;
    row.x_name = x_name_;
    row.x_value = x_value;
    row.p_max_dbm = p_max_dbm;
    row.method = std::move(method);
    row.trials = trials_;
    result_.rows.push_back(std::move(row));
    result_.per_trial.emplace_back(trials_, 0.0);
    return result_.rows.size() - 1;
  }

  void record(std::size_t row, std::size_t trial, double rate_bits) {
    result_.per_trial[row][trial] = rate_bits;
  }

  ExperimentResult finish() {
    for (std::size_t i = 0; i < result_.rows.size(); ++i) {
      const std::vector<double>& xs = result_.per_trial[i];
      double sum = 0.0;
      for (double x : xs) sum += x;
      const double mean = sum / static_cast<double>(xs.size());
      double ss = 0.0;
      for (double x : xs) ss += (x - mean) * (x - mean);
      const double n = static_cast<double>(xs.size());
      result_.rows[i].mean_rate_bits = mean;
      result_.rows[i].stderr_bits = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    }
    return std::move(result_);
  }

 private:
  std::string experiment_;
  std::string x_name_;
  std::size_t trials_;
  ExperimentResult result_;
};

std::size_t single_n(const ExperimentConfig& cfg, const std::vector<std::size_t>& fallback,
                     const char* experiment) {
  const std::vector<std::size_t>& ns = cfg.n_list.empty() ? fallback : cfg.n_list;
  if (ns.size() != 1) {
    throw ConfigError(std::string("field 'n': ") + experiment + " takes a single N");
  }
  return ns.front();
}

const std::vector<double>& pmax_list(const ExperimentConfig& cfg, const std::vector<double>& fallback) {
  return cfg.p_max_dbm.empty() ? fallback : cfg.p_max_dbm;
}

EmrinConfig emrin_config(const ExperimentConfig& cfg, std::size_t k, std::size_t trial) {
  EmrinConfig e;
  e.k = k;
  e.xi = cfg.solver.xi;
  e.max_iter = cfg.solver.max_iter;
  e.seed = trial_start_seed(cfg.seed, trial);
  return e;
}

std::string fixed_tag(double beta) { return "FIXED(" + format_number(beta) + ")"; }

}  // namespace

Seed trial_channel_seed(Seed master, std::size_t trial) {
  return derive_seed(derive_seed(master, trial), kChannelStream);
}

Seed trial_start_seed(Seed master, std::size_t trial) {
  return derive_seed(derive_seed(master, trial), kStartStream);
}

TrialInstance make_trial(const ExperimentConfig& cfg, std::size_t trial, std::size_t n,
                         double p_max_dbm) {
  Draw d = draw_channel(cfg, trial, n);
  TrialInstance inst;
  inst.params = cfg.system_params(n, p_max_dbm);
  inst.coefficients = compute_coefficients(d.forms, inst.params);
  inst.channels = std::move(d.channels);
  inst.beamformers = std::move(d.beamformers);
  return inst;
}

ExperimentResult run_rate_vs_beta(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t n = single_n(cfg, kBetaSweepN, "rate-vs-beta");
  const std::vector<double>& pmaxes = pmax_list(cfg, kBetaSweepPmaxDbm);
  const std::size_t grid = cfg.beta_grid;
  auto beta_at = [grid](std::size_t j) {
    return j + 1 == grid ? 1.0 : static_cast<double>(j) / static_cast<double>(grid - 1);
  };

  Table table("rate-vs-beta", "beta", cfg.trials);
  // row index of EXACT is base + 2 j, APPROX follows it
  std::vector<std::size_t> base(pmaxes.size());
  for (std::size_t pi = 0; pi < pmaxes.size(); ++pi) {
    for (std::size_t j = 0; j < grid; ++j) {
      const std::size_t row = table.add_row(beta_at(j), pmaxes[pi], "EXACT");
      table.add_row(beta_at(j), pmaxes[pi], "APPROX");
      if (j == 0) base[pi] = row;
    }
  }

  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Draw d = draw_channel(cfg, t, n);
    for (std::size_t pi = 0; pi < pmaxes.size(); ++pi) {
      const Coefficients co = compute_coefficients(d.forms, cfg.system_params(n, pmaxes[pi]));
      const CubicCoeffs cc = make_cubic_coeffs(co);
      for (std::size_t j = 0; j < grid; ++j) {
        const double beta = beta_at(j);
        table.record(base[pi] + 2 * j, t, rate(std::max(g_exact(co, beta), 0.0)));
        table.record(base[pi] + 2 * j + 1, t, rate(std::max(approx_g2(cc, co, beta), 0.0)));
      }
    }
  }
  return table.finish();
}

ExperimentResult run_rate_vs_k(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t n = single_n(cfg, kKSweepN, "rate-vs-k");
  const std::vector<double>& pmaxes = pmax_list(cfg, kKSweepPmaxDbm);
  const std::vector<std::size_t>& ks = cfg.solver.k_sweep;

  Table table("rate-vs-k", "K", cfg.trials);
  // per (P, K): EMRIN row then ES row
  for (double pmax : pmaxes) {
    for (std::size_t k : ks) {
      table.add_row(static_cast<double>(k), pmax, "EMRIN");
      table.add_row(static_cast<double>(k), pmax, "ES");
    }
  }

  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Draw d = draw_channel(cfg, t, n);
    for (std::size_t pi = 0; pi < pmaxes.size(); ++pi) {
      const Coefficients co = compute_coefficients(d.forms, cfg.system_params(n, pmaxes[pi]));
      const double es_rate = exhaustive_search(co, cfg.solver.es_step).rate_bits;
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const std::size_t row = 2 * (pi * ks.size() + ki);
        table.record(row, t, emrin(co, emrin_config(cfg, ks[ki], t)).rate_bits);
        table.record(row + 1, t, es_rate);
      }
    }
  }
  return table.finish();
}

ExperimentResult run_rate_vs_n(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<std::size_t>& ns = cfg.n_list.empty() ? kNSweepN : cfg.n_list;
  const std::vector<double>& pmaxes = pmax_list(cfg, kNSweepPmaxDbm);
  const std::vector<double>& fixed = cfg.solver.fixed_betas;
  const std::size_t per_point = 4 + fixed.size();

  Table table("rate-vs-n", "N", cfg.trials);
  for (std::size_t n : ns) {
    for (double pmax : pmaxes) {
      const auto x = static_cast<double>(n);
      table.add_row(x, pmax, "ES");
      table.add_row(x, pmax, "EMRIN");
      table.add_row(x, pmax, "TPA");
      table.add_row(x, pmax, "NEWTON");
      for (double b : fixed) table.add_row(x, pmax, fixed_tag(b));
    }
  }

  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const Draw d = draw_channel(cfg, t, ns[ni]);
      for (std::size_t pi = 0; pi < pmaxes.size(); ++pi) {
        const Coefficients co =
            compute_coefficients(d.forms, cfg.system_params(ns[ni], pmaxes[pi]));
        const std::size_t row = (ni * pmaxes.size() + pi) * per_point;
        table.record(row, t, exhaustive_search(co, cfg.solver.es_step).rate_bits);
        table.record(row + 1, t, emrin(co, emrin_config(cfg, cfg.solver.k, t)).rate_bits);
        table.record(row + 2, t, tpa(co).rate_bits);
        table.record(row + 3, t,
                     newton_single(co, cfg.solver.newton_start, cfg.solver.xi, cfg.solver.max_iter)
                         .rate_bits);
        for (std::size_t fi = 0; fi < fixed.size(); ++fi) {
          table.record(row + 4 + fi, t, fixed_pa(co, PaFactor(fixed[fi])).rate_bits);
        }
      }
    }
  }
  return table.finish();
}

Method parse_method(const std::string& tag) {
  std::string upper;
  for (char c : tag) upper.push_back(static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c));
  if (upper == "EMRIN") return Method::Emrin;
  if (upper == "TPA") return Method::Tpa;
  if (upper == "NEWTON") return Method::Newton;
  if (upper == "ES") return Method::ExhaustiveSearch;
  if (upper == "FIXED") return Method::Fixed;
  throw std::invalid_argument("unknown method '" + tag +
                              "' (expected EMRIN, TPA, NEWTON, ES or FIXED)");
}

SingleSolve run_single_solve(const ExperimentConfig& cfg, Method method) {
  cfg.validate();
  if (cfg.n_list.size() > 1) throw ConfigError("field 'n': solve takes a single N");
  if (cfg.p_max_dbm.size() > 1) throw ConfigError("field 'pmax_dbm': solve takes a single P_max");

  SingleSolve out;
  out.n = cfg.n_list.empty() ? kSolveN : cfg.n_list.front();
  out.p_max_dbm = cfg.p_max_dbm.empty() ? kSolvePmaxDbm : cfg.p_max_dbm.front();
  const TrialInstance inst = make_trial(cfg, 0, out.n, out.p_max_dbm);
  out.params = inst.params;
  out.coefficients = inst.coefficients;

  const SolverSettings& s = cfg.solver;
  switch (method) {
    case Method::Emrin: out.result = emrin(inst.coefficients, emrin_config(cfg, s.k, 0)); break;
    case Method::Tpa: out.result = tpa(inst.coefficients); break;
    case Method::Newton:
      out.result = newton_single(inst.coefficients, s.newton_start, s.xi, s.max_iter);
      break;
    case Method::ExhaustiveSearch: out.result = exhaustive_search(inst.coefficients, s.es_step); break;
    case Method::Fixed: out.result = fixed_pa(inst.coefficients, PaFactor(s.beta)); break;
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "experiment,x_name,x_value,p_max_dbm,method,mean_rate_bits,stderr,trials\n";
  for (const ResultRow& r : rows) {
    out << r.experiment << ',' << r.x_name << ',' << format_number(r.x_value) << ','
        << format_number(r.p_max_dbm) << ',' << r.method << ',' << format_number(r.mean_rate_bits)
        << ',' << format_number(r.stderr_bits) << ',' << r.trials << '\n';
  }
}

void write_solve_report(std::ostream& out, const SingleSolve& solve) {
  const SolveResult& r = solve.result;
  const Diagnostics& d = r.diagnostics;
  std::size_t converged = 0;
  std::size_t iterations = 0;
  for (bool c : d.converged) converged += c ? 1 : 0;
  for (std::size_t i : d.iterations) iterations += i;

  out << "method        " << to_string(r.method) << '\n'
      << "n             " << solve.n << '\n'
      << "m             " << solve.params.m << '\n'
      << "pmax_dbm      " << format_number(solve.p_max_dbm) << '\n'
      << "beta          " << format_number(r.beta_opt.value()) << '\n'
      << "snr           " << format_number(r.snr) << '\n'
      << "snr_db        " << format_number(10.0 * std::log10(r.snr)) << '\n'
      << "rate_bits     " << format_number(r.rate_bits) << '\n';
  switch (r.method) {
    case Method::Emrin:
    case Method::Newton:
      out << "starts        " << d.starts.size() << '\n'
          << "converged     " << converged << '\n'
          << "iterations    " << iterations << '\n'
          << "failed_runs   " << d.failed_runs << '\n'
          << "out_of_range  " << d.out_of_range << '\n';
      break;
    case Method::Tpa: {
      out << "candidates    ";
      for (std::size_t i = 0; i < d.candidates.size(); ++i) {
        out << (i ? "," : "") << format_number(d.candidates[i]);
      }
      out << '\n' << "out_of_range  " << d.out_of_range << '\n';
      break;
    }
    case Method::ExhaustiveSearch:
      out << "evaluations   " << d.evaluations << '\n';
      break;
    case Method::Fixed:
      break;
  }
}

}  // namespace irspa
