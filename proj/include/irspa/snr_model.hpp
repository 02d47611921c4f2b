#ifndef IRSPA_SNR_MODEL_HPP
#define IRSPA_SNR_MODEL_HPP

#include <limits>
#include <stdexcept>

#include "irspa/channel.hpp"

namespace irspa {

/// Fraction of P_max granted to the BS; the IRS gets the remainder.
class PaFactor {
 public:
  PaFactor() = default;
  explicit PaFactor(double beta);

  double value() const { return beta_; }

 private:
  double beta_ = 0.0;
};

/// The scalar quadratic forms every SNR expression is built from.
struct QuadraticForms {
  double direct_gain = 0.0;    // |h^H v|^2
  double irs_input = 0.0;      // ||theta^H diag(G v)||^2
  double cascaded_gain = 0.0;  // |theta^H diag(f^H) G v|^2
  double irs_noise_gain = 0.0; // ||theta^H diag(f^H)||^2
  double cross = 0.0;          // Re{theta^H diag(f^H) G v v^H h}
};

QuadraticForms compute_quadratic_forms(const ChannelSet& ch, const Beamformers& bf);

/// SNR(beta) = (a b^2 + b b + 2 c b sqrt(d b^2 + e b + f)) / (g b + h).
struct Coefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
  /// a + b evaluated without the cancellation of the cascaded term that a and b
  /// share. NaN when unknown, e.g. for hand-built coefficients.
  double a_plus_b = std::numeric_limits<double>::quiet_NaN();

  /// Physical coefficients satisfy d + e + f = 0, i.e. the radicand vanishes at
  /// beta = 1. When the sum is rounding dust the factored form keeps that zero exact.
  double radicand(double beta) const;
  double denominator(double beta) const { return g * beta + h; }
};

/// Thrown when the radicand is clearly negative, which valid inputs cannot produce.
class NumericalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when derivatives are requested where the radical is not differentiable.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Coefficients compute_coefficients(const QuadraticForms& q, const SystemParams& params);
Coefficients compute_coefficients(const ChannelSet& ch, const Beamformers& bf,
                                  const SystemParams& params);

/// IRS amplification factor that spends exactly (1 - beta) P_max at the IRS.
double rho(PaFactor beta, const ChannelSet& ch, const Beamformers& bf, const SystemParams& params);

/// Received SNR evaluated directly from the signal model (no coefficient reduction).
double snr_direct(PaFactor beta, const ChannelSet& ch, const Beamformers& bf,
                  const SystemParams& params);

/// Exact objective on [0, 1]. Radicand dust in [-1e-12, 0) is clamped to zero.
double g_exact(const Coefficients& co, double beta);

struct Derivatives {
  double first = 0.0;
  double second = 0.0;
};

/// First and second derivatives of g_exact. Requires radicand(beta) > 0.
Derivatives g_derivatives(const Coefficients& co, double beta);

/// log2(1 + snr)
double rate(double snr);

}  // namespace irspa

#endif  // IRSPA_SNR_MODEL_HPP
