#ifndef IRSPA_SOLVERS_HPP
#define IRSPA_SOLVERS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "irspa/cubic.hpp"
#include "irspa/numerics.hpp"
#include "irspa/snr_model.hpp"

namespace irspa {

enum class Method { Emrin, Tpa, Newton, ExhaustiveSearch, Fixed };

std::string to_string(Method method);

struct EmrinConfig {
  std::size_t k = 256;
  double xi = 1e-8;
  std::size_t max_iter = 100;
  Seed seed{};

  void validate() const;
};

/// Per-run bookkeeping. Only the fields relevant to a method are filled.
struct Diagnostics {
  std::vector<double> starts;
  std::vector<double> candidates;   // clamped candidates, in evaluation order
  std::vector<std::size_t> iterations;
  std::vector<bool> converged;
  std::size_t failed_runs = 0;      // Newton runs that hit a singular point or NaN
  std::size_t out_of_range = 0;     // candidates clamped to 0
  std::size_t evaluations = 0;      // objective evaluations (ES)
  double grid_max_jump = 0.0;       // max |g(b_{i+1}) - g(b_i)| over the ES grid
};

struct SolveResult {
  PaFactor beta_opt;
  double snr = 0.0;
  double rate_bits = 0.0;
  Method method = Method::Fixed;
  Diagnostics diagnostics;
};

struct NewtonOutcome {
  double beta = 0.0;  // NaN when the iteration broke down
  bool converged = false;
  std::size_t iterations = 0;
};

/// Plain Newton iteration on g'(beta) = 0. Iterates are not confined to [0, 1].
/// Breakdown (g'' = 0, radicand <= 0, non-finite step) yields beta = NaN.
NewtonOutcome newton_solve(const Coefficients& co, double beta0, double xi, std::size_t max_iter);

struct ClampedCandidate {
  PaFactor beta;
  bool out_of_range = false;
  bool not_a_number = false;
};

/// Identity on [0, 1], 0 elsewhere (and for NaN).
ClampedCandidate clamp_candidate(double beta);

/// K uniform random starts, Newton from each, clamp, keep the best on g_exact.
SolveResult emrin(const Coefficients& co, const EmrinConfig& cfg);

/// Single Newton run from a fixed start, clamped and scored.
SolveResult newton_single(const Coefficients& co, double beta0, double xi, std::size_t max_iter);

/// First-order Taylor surrogate g2(beta) = (l b^3 + m b^2 + n b) / (g b + h)
/// and its stationarity cubic p b^3 + q b^2 + r b + s.
struct CubicCoeffs {
  double l = 0.0;
  double m = 0.0;
  double n = 0.0;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double s = 0.0;

  Cubic cubic() const { return {p, q, r, s}; }
};

CubicCoeffs make_cubic_coeffs(const Coefficients& co);

double approx_g2(const CubicCoeffs& cc, const Coefficients& co, double beta);

/// Closed-form allocation: roots of the stationarity cubic plus both endpoints,
/// selected on g2, reported on g_exact.
SolveResult tpa(const Coefficients& co);

/// Grid search over {0, step, 2 step, ..., 1}; 1 is always evaluated.
SolveResult exhaustive_search(const Coefficients& co, double step);

SolveResult fixed_pa(const Coefficients& co, PaFactor beta);

}  // namespace irspa

#endif  // IRSPA_SOLVERS_HPP
