#ifndef IRSPA_CUBIC_HPP
#define IRSPA_CUBIC_HPP

#include <vector>

namespace irspa {

/// p x^3 + q x^2 + r x + s
struct Cubic {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double s = 0.0;

  double operator()(double x) const { return ((p * x + q) * x + r) * x + s; }
};

/// All distinct real roots in ascending order.
///
/// Uses the depressed-cubic substitution x = y - q / (3p) and Cardano's three
/// branches y = w^k A + w^{-k} B with A B = -t. A branch is kept when its
/// imaginary part is at most 1e-8 (1 + |Re|); kept roots get a short Newton
/// polish on the original polynomial. Leading zero coefficients fall back to
/// the quadratic and linear formulas; the all-zero polynomial yields no roots.
std::vector<double> solve_cubic(const Cubic& cubic);

}  // namespace irspa

#endif  // IRSPA_CUBIC_HPP
