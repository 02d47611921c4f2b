#include "irspa/channel.hpp"

#include <cmath>
#include <string>

namespace irspa {

void Geometry::validate() const {
  if (!(alpha_g > 0.0 && alpha_f > 0.0 && alpha_h > 0.0)) {
    throw std::invalid_argument("geometry: path-loss exponents must be positive");
  }
  if (!(ref_gain > 0.0) || !std::isfinite(ref_gain)) {
    throw std::invalid_argument("geometry: ref_gain must be positive");
  }
  if (bs_pos == irs_pos || bs_pos == user_pos || irs_pos == user_pos) {
    throw std::invalid_argument("geometry: node positions must be pairwise distinct");
  }
}

void SystemParams::validate() const {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("system params: M and N must be at least 1");
  }
  if (!(p_max > 0.0) || !(sigma_i_sq > 0.0) || !(sigma_n_sq > 0.0)) {
    throw std::invalid_argument("system params: powers must be positive");
  }
}

void ChannelSet::validate(const SystemParams& params) const {
  if (g.rows() != params.n || g.cols() != params.m || f.size() != params.n ||
      h.size() != params.m) {
    throw std::invalid_argument("channel set: dimensions do not match M=" +
                                std::to_string(params.m) + ", N=" + std::to_string(params.n));
  }
}

double distance(const Point3& p1, const Point3& p2) {
  const double dx = p1[0] - p2[0];
  const double dy = p1[1] - p2[1];
  const double dz = p1[2] - p2[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double path_loss(double d, double alpha, double ref_gain) {
  if (!(d >= 1.0)) {
    throw std::invalid_argument("path_loss: distance " + std::to_string(d) +
                                " m is inside the 1 m reference distance");
  }
  return ref_gain * std::pow(d, -alpha);
}

ChannelSet sample_channels(const Geometry& geom, const SystemParams& params, RandomStream& rng) {
  geom.validate();
  params.validate();
  const double var_g = path_loss(distance(geom.bs_pos, geom.irs_pos), geom.alpha_g, geom.ref_gain);
  const double var_f = path_loss(distance(geom.irs_pos, geom.user_pos), geom.alpha_f, geom.ref_gain);
  const double var_h = path_loss(distance(geom.bs_pos, geom.user_pos), geom.alpha_h, geom.ref_gain);

  ChannelSet ch;
  ch.g = ComplexMatrix(params.n, params.m);
  const ComplexVector g_entries = sample_circular_gaussian(params.n * params.m, var_g, rng);
  for (std::size_t i = 0; i < g_entries.size(); ++i) ch.g.values()[i] = g_entries[i];
  ch.f = sample_circular_gaussian(params.n, var_f, rng);
  ch.h = sample_circular_gaussian(params.m, var_h, rng);
  return ch;
}

Beamformers design_beamformers(const ChannelSet& ch) {
  const double h_norm = std::sqrt(norm_sq(ch.h));
  if (!(h_norm > 0.0)) {
    throw DegenerateChannelError("design_beamformers: direct channel h is all zero");
  }
  if (ch.g.rows() != ch.f.size() || ch.g.cols() != ch.h.size()) {
    throw std::invalid_argument("design_beamformers: inconsistent channel dimensions");
  }

  Beamformers bf;
  bf.v = ComplexVector(ch.h.size());
  for (std::size_t k = 0; k < ch.h.size(); ++k) bf.v[k] = ch.h[k] / h_norm;

  const Complex direct = hermitian_inner(ch.h, bf.v);
  const double target_phase = std::arg(direct);
  const ComplexVector gv = matvec(ch.g, bf.v);
  const std::size_t n = ch.f.size();
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));

  bf.theta = ComplexVector(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex cascaded = std::conj(ch.f[i]) * gv[i];
    // arg(0) is 0, so a vanishing cascaded term just gets the target phase.
    const double conj_theta_phase = target_phase - std::arg(cascaded);
    bf.theta[i] = std::polar(amp, -conj_theta_phase);
  }
  return bf;
}

}  // namespace irspa
