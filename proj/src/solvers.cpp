#include "irspa/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irspa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SolveResult scored(const Coefficients& co, PaFactor beta, Method method) {
  SolveResult out;
  out.beta_opt = beta;
  out.method = method;
  out.snr = g_exact(co, beta.value());
  // Rounding can leave a zero SNR a hair below zero.
  out.rate_bits = rate(std::max(out.snr, 0.0));
  return out;
}

// Lowest beta wins ties.
bool improves(double value, double beta, double best_value, double best_beta) {
  return value > best_value || (value == best_value && beta < best_beta);
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Emrin: return "EMRIN";
    case Method::Tpa: return "TPA";
    case Method::Newton: return "NEWTON";
    case Method::ExhaustiveSearch: return "ES";
    case Method::Fixed: return "FIXED";
  }
  return "UNKNOWN";
}

void EmrinConfig::validate() const {
  if (k < 1) throw std::invalid_argument("emrin: K must be at least 1");
  if (!(xi > 0.0)) throw std::invalid_argument("emrin: xi must be positive");
  if (max_iter < 1) throw std::invalid_argument("emrin: max_iter must be at least 1");
}

NewtonOutcome newton_solve(const Coefficients& co, double beta0, double xi, std::size_t max_iter) {
  if (!(beta0 >= 0.0 && beta0 <= 1.0)) {
    throw std::invalid_argument("newton_solve: start outside [0, 1]");
  }
  NewtonOutcome out;
  double beta = beta0;
  for (std::size_t i = 1; i <= max_iter; ++i) {
    out.iterations = i;
    Derivatives der;
    try {
      der = g_derivatives(co, beta);
    } catch (const SingularPointError&) {
      out.beta = kNaN;
      return out;
    }
    if (der.second == 0.0 || !std::isfinite(der.first) || !std::isfinite(der.second)) {
      out.beta = kNaN;
      return out;
    }
    const double next = beta - der.first / der.second;
    if (!std::isfinite(next)) {
      out.beta = kNaN;
      return out;
    }
    if (std::abs(next - beta) <= xi) {
      out.beta = next;
      out.converged = true;
      return out;
    }
    beta = next;
  }
  out.beta = beta;
  return out;
}

ClampedCandidate clamp_candidate(double beta) {
  ClampedCandidate out;
  if (std::isnan(beta)) {
    out.not_a_number = true;
  } else if (beta >= 0.0 && beta <= 1.0) {
    out.beta = PaFactor(beta);
  } else {
    out.out_of_range = true;
  }
  return out;
}

SolveResult emrin(const Coefficients& co, const EmrinConfig& cfg) {
  cfg.validate();
  RandomStream rng(cfg.seed);
  Diagnostics diag;
  double best_beta = 0.0;
  double best_value = -std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < cfg.k; ++k) {
    const double start = rng.uniform01();
    const NewtonOutcome run = newton_solve(co, start, cfg.xi, cfg.max_iter);
    const ClampedCandidate cand = clamp_candidate(run.beta);
    const double value = g_exact(co, cand.beta.value());

    diag.starts.push_back(start);
    diag.candidates.push_back(cand.beta.value());
    diag.iterations.push_back(run.iterations);
    diag.converged.push_back(run.converged);
    if (cand.not_a_number) ++diag.failed_runs;
    if (cand.out_of_range) ++diag.out_of_range;

    if (improves(value, cand.beta.value(), best_value, best_beta)) {
      best_value = value;
      best_beta = cand.beta.value();
    }
  }

  SolveResult out = scored(co, PaFactor(best_beta), Method::Emrin);
  out.diagnostics = std::move(diag);
  return out;
}

SolveResult newton_single(const Coefficients& co, double beta0, double xi, std::size_t max_iter) {
  const NewtonOutcome run = newton_solve(co, beta0, xi, max_iter);
  const ClampedCandidate cand = clamp_candidate(run.beta);
  SolveResult out = scored(co, cand.beta, Method::Newton);
  out.diagnostics.starts = {beta0};
  out.diagnostics.candidates = {cand.beta.value()};
  out.diagnostics.iterations = {run.iterations};
  out.diagnostics.converged = {run.converged};
  out.diagnostics.failed_runs = cand.not_a_number ? 1 : 0;
  out.diagnostics.out_of_range = cand.out_of_range ? 1 : 0;
  return out;
}

CubicCoeffs make_cubic_coeffs(const Coefficients& co) {
  if (!(co.f > 0.0)) {
    throw std::invalid_argument("make_cubic_coeffs: coefficient f must be positive");
  }
  const double root_f = std::sqrt(co.f);
  CubicCoeffs cc;
  cc.l = co.c * co.d * root_f / co.f;
  cc.m = co.a + co.c * co.e * root_f / co.f;
  cc.n = co.b + 2.0 * co.c * root_f;
  cc.p = 2.0 * co.g * cc.l;
  cc.q = cc.m * co.g + 3.0 * cc.l * co.h;
  cc.r = 2.0 * cc.m * co.h;
  cc.s = cc.n * co.h;
  return cc;
}

double approx_g2(const CubicCoeffs& cc, const Coefficients& co, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("approx_g2: beta outside [0, 1]");
  }
  return ((cc.l * beta + cc.m) * beta + cc.n) * beta / co.denominator(beta);
}

SolveResult tpa(const Coefficients& co) {
  const CubicCoeffs cc = make_cubic_coeffs(co);
  Diagnostics diag;
  diag.candidates.push_back(0.0);
  for (double root : solve_cubic(cc.cubic())) {
    const ClampedCandidate cand = clamp_candidate(root);
    if (cand.out_of_range) ++diag.out_of_range;
    diag.candidates.push_back(cand.beta.value());
  }
  diag.candidates.push_back(1.0);

  double best_beta = 0.0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (double beta : diag.candidates) {
    const double value = approx_g2(cc, co, beta);
    if (improves(value, beta, best_value, best_beta)) {
      best_value = value;
      best_beta = beta;
    }
  }
  SolveResult out = scored(co, PaFactor(best_beta), Method::Tpa);
  out.diagnostics = std::move(diag);
  return out;
}

SolveResult exhaustive_search(const Coefficients& co, double step) {
  if (!(step > 0.0 && step <= 0.5)) {
    throw std::invalid_argument("exhaustive_search: step must lie in (0, 0.5]");
  }
  const auto count = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  Diagnostics diag;
  double best_beta = 0.0;
  double best_value = -std::numeric_limits<double>::infinity();
  double previous = 0.0;

  auto visit = [&](double beta) {
    const double value = g_exact(co, beta);
    if (diag.evaluations > 0) diag.grid_max_jump = std::max(diag.grid_max_jump, std::abs(value - previous));
    previous = value;
    ++diag.evaluations;
    if (value > best_value) {
      best_value = value;
      best_beta = beta;
    }
  };

  double last = 0.0;
  for (std::size_t i = 0; i <= count; ++i) {
    last = std::min(static_cast<double>(i) * step, 1.0);
    visit(last);
  }
  if (last < 1.0) visit(1.0);

  SolveResult out = scored(co, PaFactor(best_beta), Method::ExhaustiveSearch);
  out.diagnostics = std::move(diag);
  return out;
}

SolveResult fixed_pa(const Coefficients& co, PaFactor beta) {
  SolveResult out = scored(co, beta, Method::Fixed);
  out.diagnostics.candidates = {beta.value()};
  return out;
}

}  // namespace irspa
