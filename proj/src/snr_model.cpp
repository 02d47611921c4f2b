#include "irspa/snr_model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace irspa {

namespace {

constexpr double kRadicandDust = 1e-12;

void check_unit_interval(double beta, const char* where) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": beta " + std::to_string(beta) +
                                " outside [0, 1]");
  }
}

void check_dimensions(const ChannelSet& ch, const Beamformers& bf) {
  if (ch.g.cols() != bf.v.size() || ch.h.size() != bf.v.size() || ch.g.rows() != ch.f.size() ||
      bf.theta.size() != ch.f.size()) {
    throw std::invalid_argument("snr model: channel and beamformer dimensions disagree");
  }
}

}  // namespace

PaFactor::PaFactor(double beta) : beta_(beta) { check_unit_interval(beta, "PaFactor"); }

QuadraticForms compute_quadratic_forms(const ChannelSet& ch, const Beamformers& bf) {
  check_dimensions(ch, bf);
  const ComplexVector gv = matvec(ch.g, bf.v);
  const Complex direct = hermitian_inner(ch.h, bf.v);

  QuadraticForms q;
  Complex cascaded = 0.0;
  for (std::size_t i = 0; i < ch.f.size(); ++i) {
    const double theta_sq = std::norm(bf.theta[i]);
    q.irs_input += theta_sq * std::norm(gv[i]);
    q.irs_noise_gain += theta_sq * std::norm(ch.f[i]);
    cascaded += std::conj(bf.theta[i]) * std::conj(ch.f[i]) * gv[i];
  }
  q.direct_gain = std::norm(direct);
  q.cascaded_gain = std::norm(cascaded);
  // v^H h = conj(h^H v)
  q.cross = std::real(cascaded * std::conj(direct));
  return q;
}

Coefficients compute_coefficients(const QuadraticForms& q, const SystemParams& params) {
  const double p = params.p_max;
  const double p2 = p * p;
  const double si = params.sigma_i_sq;
  const double sn = params.sigma_n_sq;

  Coefficients co;
  co.a = p2 * q.direct_gain * q.irs_input - p2 * q.cascaded_gain;
  co.b = p2 * q.cascaded_gain + p * q.direct_gain * si;
  co.c = p * q.cross;
  co.d = -p2 * q.irs_input;
  co.e = p2 * q.irs_input - si * p;
  co.f = p * si;
  co.g = sn * p * q.irs_input - si * p * q.irs_noise_gain;
  co.h = si * p * q.irs_noise_gain + sn * si;
  co.a_plus_b = p * q.direct_gain * (p * q.irs_input + si);
  return co;
}

Coefficients compute_coefficients(const ChannelSet& ch, const Beamformers& bf,
                                  const SystemParams& params) {
  params.validate();
  return compute_coefficients(compute_quadratic_forms(ch, bf), params);
}

double rho(PaFactor beta, const ChannelSet& ch, const Beamformers& bf, const SystemParams& params) {
  const QuadraticForms q = compute_quadratic_forms(ch, bf);
  const double b = beta.value();
  return std::sqrt((1.0 - b) * params.p_max /
                   (b * params.p_max * q.irs_input + params.sigma_i_sq));
}

double snr_direct(PaFactor beta, const ChannelSet& ch, const Beamformers& bf,
                  const SystemParams& params) {
  check_dimensions(ch, bf);
  const double amp = rho(beta, ch, bf, params);
  const std::size_t n = ch.f.size();
  const std::size_t m = ch.h.size();

  // (rho theta^H diag(f^H) G + h^H), a 1 x M row
  ComplexVector row(m);
  for (std::size_t col = 0; col < m; ++col) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += std::conj(bf.theta[i]) * std::conj(ch.f[i]) * ch.g(i, col);
    }
    row[col] = amp * acc + std::conj(ch.h[col]);
  }
  Complex received = 0.0;
  for (std::size_t col = 0; col < m; ++col) received += row[col] * bf.v[col];

  double noise_row = 0.0;  // ||theta^H diag(f^H)||^2
  for (std::size_t i = 0; i < n; ++i) noise_row += std::norm(std::conj(bf.theta[i]) * std::conj(ch.f[i]));

  const double signal = beta.value() * params.p_max * std::norm(received);
  const double noise = params.sigma_i_sq * amp * amp * noise_row + params.sigma_n_sq;
  return signal / noise;
}

double Coefficients::radicand(double beta) const {
  const double scale = std::abs(d) + std::abs(e) + std::abs(f);
  if (std::abs(d + e + f) <= 8.0 * std::numeric_limits<double>::epsilon() * scale) {
    return (1.0 - beta) * (f - d * beta);
  }
  return (d * beta + e) * beta + f;
}

double g_exact(const Coefficients& co, double beta) {
  check_unit_interval(beta, "g_exact");
  double rad = co.radicand(beta);
  if (rad < 0.0) {
    if (rad < -kRadicandDust) {
      throw NumericalDomainError("g_exact: radicand " + std::to_string(rad) + " at beta " +
                                 std::to_string(beta) + " is negative");
    }
    rad = 0.0;
  }
  // beta (a (beta - 1) + (a + b)) is exact at beta = 1 when a + b is known.
  const double quad = std::isnan(co.a_plus_b) ? (co.a * beta + co.b) * beta
                                              : (co.a * (beta - 1.0) + co.a_plus_b) * beta;
  const double num = quad + 2.0 * co.c * beta * std::sqrt(rad);
  return num / co.denominator(beta);
}

Derivatives g_derivatives(const Coefficients& co, double beta) {
  const double rad = co.radicand(beta);
  if (!(rad > 0.0) || !std::isfinite(beta)) {
    throw SingularPointError("g_derivatives: radicand not positive at beta " +
                             std::to_string(beta));
  }
  const double a = co.a, b = co.b, c = co.c, d = co.d, e = co.e, g = co.g, h = co.h;
  const double r = std::sqrt(rad);
  const double dr = 2.0 * d * beta + e;  // d(radicand)/d(beta)
  const double b2 = beta * beta;
  const double b3 = b2 * beta;

  // f1 = a g b^2 + P(b) / r,   P = 2cdg b^3 + (ceg + 2cdh) b^2 + ceh b
  const double poly = 2.0 * c * d * g * b3 + (c * e * g + 2.0 * c * d * h) * b2 + c * e * h * beta;
  const double dpoly = 6.0 * c * d * g * b2 + 2.0 * (c * e * g + 2.0 * c * d * h) * beta + c * e * h;
  const double f1 = a * g * b2 + poly / r;
  const double df1 = 2.0 * a * g * beta + dpoly / r - poly * dr / (2.0 * rad * r);

  // f2 = 2ah b + 2ch r + bh
  const double f2 = 2.0 * a * h * beta + 2.0 * c * h * r + b * h;
  const double df2 = 2.0 * a * h + c * h * dr / r;

  const double den = co.denominator(beta);
  Derivatives out;
  out.first = (f1 + f2) / (den * den);
  out.second = ((df1 + df2) * den - 2.0 * g * (f1 + f2)) / (den * den * den);
  return out;
}

double rate(double snr) {
  if (!(snr >= 0.0)) {
    throw std::invalid_argument("rate: negative snr " + std::to_string(snr));
  }
  return std::log2(1.0 + snr);
}

}  // namespace irspa
