#include "irspa/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace irspa {

namespace {

using Cx = std::complex<double>;

constexpr double kImagTol = 1e-8;
constexpr double kDiscriminantTol = 1e-13;
constexpr int kPolishSteps = 8;

double derivative(const Cubic& c, double x) { return (3.0 * c.p * x + 2.0 * c.q) * x + c.r; }

double polish(const Cubic& c, double x) {
  double fx = std::abs(c(x));
  for (int i = 0; i < kPolishSteps && fx > 0.0; ++i) {
    const double dfx = derivative(c, x);
    if (dfx == 0.0 || !std::isfinite(dfx)) break;
    const double next = x - c(x) / dfx;
    const double fnext = std::abs(c(next));
    if (!(fnext < fx)) break;
    x = next;
    fx = fnext;
  }
  return x;
}

Cx principal_cbrt(Cx w) {
  if (w.imag() == 0.0) return Cx(std::cbrt(w.real()), 0.0);
  return std::polar(std::cbrt(std::abs(w)), std::arg(w) / 3.0);
}

std::vector<double> solve_quadratic(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-b / (2.0 * a)};
  const double k = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<double> roots{k / a};
  if (k != 0.0) roots.push_back(c / k);
  return roots;
}

std::vector<double> cardano(const Cubic& c) {
  const double p = c.p, q = c.q, r = c.r, s = c.s;
  const double shift = -q / (3.0 * p);
  const double t = (3.0 * p * r - q * q) / (9.0 * p * p);
  const double u = (27.0 * p * p * s - 9.0 * p * q * r + 2.0 * q * q * q) / (54.0 * p * p * p);

  double disc = u * u + t * t * t;
  if (std::abs(disc) <= kDiscriminantTol * (u * u + std::abs(t * t * t))) disc = 0.0;

  const Cx eta = std::sqrt(Cx(disc, 0.0));
  // The larger of -u +/- eta avoids cancellation; A and B are interchangeable.
  const Cx w_plus = -u + eta;
  const Cx w_minus = -u - eta;
  const Cx big = std::abs(w_plus) >= std::abs(w_minus) ? w_plus : w_minus;
  const Cx cube_a = principal_cbrt(big);
  const Cx cube_b = cube_a == Cx(0.0, 0.0) ? Cx(0.0, 0.0) : -t / cube_a;

  const Cx omega(-0.5, std::numbers::sqrt3 / 2.0);
  const Cx omega2 = std::conj(omega);
  const Cx branches[3] = {
      cube_a + cube_b,
      omega * cube_a + omega2 * cube_b,
      omega2 * cube_a + omega * cube_b,
  };

  std::vector<double> roots;
  for (const Cx& y : branches) {
    const Cx x = y + shift;
    if (std::abs(x.imag()) <= kImagTol * (1.0 + std::abs(x.real()))) roots.push_back(x.real());
  }
  return roots;
}

}  // namespace

std::vector<double> solve_cubic(const Cubic& cubic) {
  const double scale =
      std::max({std::abs(cubic.p), std::abs(cubic.q), std::abs(cubic.r), std::abs(cubic.s)});
  if (scale == 0.0 || !std::isfinite(scale)) return {};
  const Cubic c{cubic.p / scale, cubic.q / scale, cubic.r / scale, cubic.s / scale};

  std::vector<double> roots;
  if (c.p != 0.0) {
    roots = cardano(c);
  } else if (c.q != 0.0 || c.r != 0.0) {
    roots = solve_quadratic(c.q, c.r, c.s);
  }

  for (double& x : roots) x = polish(c, x);
  std::sort(roots.begin(), roots.end());
  auto same = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(x)); };
  roots.erase(std::unique(roots.begin(), roots.end(), same), roots.end());
  return roots;
}

}  // namespace irspa
