#ifndef IRSPA_NUMERICS_HPP
#define IRSPA_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace irspa {

using Complex = std::complex<double>;

/// Fixed-length vector of complex amplitudes.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : data_(n) {}
  ComplexVector(std::initializer_list<Complex> values) : data_(values) {}
  explicit ComplexVector(std::vector<Complex> values) : data_(std::move(values)) {}

  std::size_t size() const { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  std::span<const Complex> values() const { return data_; }
  std::span<Complex> values() { return data_; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> data_;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> values() const { return data_; }
  std::span<Complex> values() { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexVector operator+(const ComplexVector& x, const ComplexVector& y);

double db_to_watt(double power_dbm);
double db_to_linear(double gain_db);

double norm_sq(const ComplexVector& v);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x);

/// sum_k conj(x_k) * y_k
Complex hermitian_inner(const ComplexVector& x, const ComplexVector& y);

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

/// Derives an independent sub-seed from a parent seed and a stream index.
/// Used to give every Monte Carlo trial (and every sub-stream inside a trial)
/// its own generator without sharing state.
Seed derive_seed(Seed parent, std::uint64_t stream);

/// Owns one pseudo-random stream. Not thread-safe; one generator per context.
class RandomStream {
 public:
  explicit RandomStream(Seed seed) : engine_(seed.value) {}

  double uniform01();
  /// Standard normal N(0, 1).
  double normal();

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// n i.i.d. CN(0, variance) samples: variance/2 per real component.
ComplexVector sample_circular_gaussian(std::size_t n, double variance, RandomStream& rng);

}  // namespace irspa

#endif  // IRSPA_NUMERICS_HPP
