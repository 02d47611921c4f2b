#ifndef IRSPA_CHANNEL_HPP
#define IRSPA_CHANNEL_HPP

#include <array>
#include <cstddef>
#include <stdexcept>

#include "irspa/numerics.hpp"

namespace irspa {

using Point3 = std::array<double, 3>;

/// Node placement and large-scale fading parameters. Distances in meters,
/// ref_gain is the linear power gain at the 1 m reference distance.
struct Geometry {
  Point3 bs_pos{0.0, 0.0, 0.0};
  Point3 irs_pos{100.0, 0.0, 10.0};
  Point3 user_pos{50.0, 30.0, 0.0};
  double alpha_g = 2.1;  // BS -> IRS
  double alpha_f = 2.1;  // IRS -> user
  double alpha_h = 4.0;  // BS -> user
  double ref_gain = 1e-3;

  void validate() const;
};

/// Link-level system parameters; every power is in watts.
struct SystemParams {
  std::size_t m = 2;        // BS antennas
  std::size_t n = 16;       // IRS elements
  double p_max = 1.0;       // BS + IRS power budget
  double sigma_i_sq = 1e-13;
  double sigma_n_sq = 1e-13;

  void validate() const;
};

/// g: IRS x BS (N x M), f: IRS -> user (N), h: BS -> user (M).
struct ChannelSet {
  ComplexMatrix g;
  ComplexVector f;
  ComplexVector h;

  void validate(const SystemParams& params) const;
};

/// Unit-norm BS transmit vector and unit-norm IRS reflect direction.
struct Beamformers {
  ComplexVector v;
  ComplexVector theta;
};

class DegenerateChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double distance(const Point3& p1, const Point3& p2);

/// ref_gain * d^-alpha for d >= 1 m.
double path_loss(double d, double alpha, double ref_gain);

/// Rayleigh channel draw with per-link variances set by path_loss().
ChannelSet sample_channels(const Geometry& geom, const SystemParams& params, RandomStream& rng);

/// v = h / |h| (MRT on the direct link). theta has magnitudes 1/sqrt(N) and
/// phases that co-phase every cascaded term conj(theta_i) conj(f_i) (Gv)_i with h^H v.
Beamformers design_beamformers(const ChannelSet& ch);

}  // namespace irspa

#endif  // IRSPA_CHANNEL_HPP
