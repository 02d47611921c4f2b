#include "irspa/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace irspa {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexVector operator+(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("vector addition: length mismatch");
  }
  ComplexVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

double db_to_watt(double power_dbm) {
  if (!std::isfinite(power_dbm)) {
    throw std::invalid_argument("db_to_watt: non-finite power");
  }
  return std::pow(10.0, (power_dbm - 30.0) / 10.0);
}

double db_to_linear(double gain_db) {
  if (!std::isfinite(gain_db)) {
    throw std::invalid_argument("db_to_linear: non-finite gain");
  }
  return std::pow(10.0, gain_db / 10.0);
}

double norm_sq(const ComplexVector& v) {
  double acc = 0.0;
  for (const Complex& z : v) acc += std::norm(z);
  return acc;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
  if (a.cols() != x.size()) {
    throw std::invalid_argument("matvec: matrix has " + std::to_string(a.cols()) +
                                " columns but vector has length " + std::to_string(x.size()));
  }
  ComplexVector y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

Complex hermitian_inner(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("hermitian_inner: length mismatch");
  }
  Complex acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += std::conj(x[k]) * y[k];
  return acc;
}

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Seed derive_seed(Seed parent, std::uint64_t stream) {
  return Seed{mix64(mix64(parent.value) ^ mix64(stream + 0x632be59bd9b4e019ULL))};
}

double RandomStream::uniform01() { return uniform_(engine_); }

double RandomStream::normal() { return normal_(engine_); }

ComplexVector sample_circular_gaussian(std::size_t n, double variance, RandomStream& rng) {
  if (!(variance >= 0.0)) {
    throw std::invalid_argument("sample_circular_gaussian: negative variance");
  }
  const double sigma = std::sqrt(variance / 2.0);
  ComplexVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    out[i] = Complex(sigma * re, sigma * im);
  }
  return out;
}

}  // namespace irspa
