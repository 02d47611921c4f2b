#include <cmath>
#include <random>

#include "doctest.h"
#include "irspa/snr_model.hpp"
#include "test_support.hpp"

using namespace irspa;
using testing::rel_err;

TEST_CASE("PaFactor rejects values outside [0, 1]") {
  CHECK(PaFactor(0.25).value() == 0.25);
  CHECK_THROWS_AS(PaFactor(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(PaFactor(1.1), std::invalid_argument);
  CHECK_THROWS_AS(PaFactor(std::nan("")), std::invalid_argument);
}

TEST_CASE("coefficients with a silent direct link") {
  std::mt19937_64 rng(1);
  testing::Instance inst = testing::random_instance(rng, false);
  inst.channels.h = ComplexVector(inst.params.m);
  const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
  const QuadraticForms q = compute_quadratic_forms(inst.channels, inst.beamformers);
  CHECK(co.c == 0.0);
  CHECK(co.a <= 0.0);
  CHECK(co.a == -inst.params.p_max * inst.params.p_max * q.cascaded_gain);
}

TEST_CASE("coefficients match the entrywise expansion") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const testing::Instance inst = testing::random_instance(rng, t % 2 == 0);
    const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
    const Coefficients ref = testing::coefficients_by_expansion(inst);
    const QuadraticForms q = compute_quadratic_forms(inst.channels, inst.beamformers);
    const double p = inst.params.p_max;
    // a and c are sums that can nearly cancel; compare them on the scale of their terms
    const double a_scale = p * p * (q.direct_gain * q.irs_input + q.cascaded_gain);
    const double c_scale = p * std::sqrt(q.direct_gain * q.cascaded_gain);
    CHECK(std::abs(co.a - ref.a) <= 1e-11 * a_scale);
    CHECK(rel_err(co.b, ref.b) <= 1e-11);
    CHECK(std::abs(co.c - ref.c) <= 1e-11 * c_scale);
    CHECK(rel_err(co.d, ref.d) <= 1e-11);
    CHECK(rel_err(co.e, ref.e) <= 1e-11);
    CHECK(rel_err(co.f, ref.f) <= 1e-11);
    CHECK(std::abs(co.g - ref.g) <= 1e-11 * (std::abs(ref.g) + ref.h));
    CHECK(rel_err(co.h, ref.h) <= 1e-11);
    CHECK(std::abs(co.a_plus_b - (ref.a + ref.b)) <= 1e-11 * a_scale);
  }
}

TEST_CASE("the stored a + b only changes rounding") {
  Coefficients co = testing::rational_instance();
  const double plain = g_exact(co, 0.7);
  co.a_plus_b = co.a + co.b;
  CHECK(rel_err(g_exact(co, 0.7), plain) <= 1e-15);
  CHECK(g_exact(co, 1.0) == 0.0);
}

TEST_CASE("coefficient structural invariants") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const testing::Instance inst = testing::random_instance(rng, t % 3 != 0);
    const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
    CHECK(co.f > 0.0);
    CHECK(co.d <= 0.0);
    CHECK(co.h > 0.0);
    CHECK(std::abs(co.d + co.e + co.f) <=
          1e-9 * std::max({std::abs(co.d), std::abs(co.e), std::abs(co.f)}));
  }
}

TEST_CASE("rho at the endpoints and power closure") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const testing::Instance inst = testing::random_instance(rng, true);
    const auto& [ch, bf, params] = inst;
    CHECK(rho(PaFactor(1.0), ch, bf, params) == 0.0);
    CHECK(rel_err(rho(PaFactor(0.0), ch, bf, params), std::sqrt(params.p_max / params.sigma_i_sq)) <=
          1e-14);

    const double beta = testing::uniform(rng, 0.0, 1.0);
    const double r = rho(PaFactor(beta), ch, bf, params);
    const double irs_input = compute_quadratic_forms(ch, bf).irs_input;
    const double spent = beta * params.p_max * r * r * irs_input + params.sigma_i_sq * r * r;
    CHECK(rel_err(spent, (1.0 - beta) * params.p_max) <= 1e-9);
  }
}

TEST_CASE("snr_direct endpoints") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const testing::Instance inst = testing::random_instance(rng, t % 2 == 0);
    const auto& [ch, bf, params] = inst;
    CHECK(snr_direct(PaFactor(0.0), ch, bf, params) == 0.0);
    const double direct = std::norm(hermitian_inner(ch.h, bf.v));
    CHECK(rel_err(snr_direct(PaFactor(1.0), ch, bf, params),
                  params.p_max * direct / params.sigma_n_sq) <= 1e-12);
  }
}

TEST_CASE("reduced objective equals the direct SNR on a beta grid") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    const testing::Instance inst = testing::random_instance(rng, t % 2 == 0);
    const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
    for (int j = 0; j <= 100; ++j) {
      const double beta = j / 100.0;
      const double direct = snr_direct(PaFactor(beta), inst.channels, inst.beamformers, inst.params);
      CHECK(rel_err(g_exact(co, beta), direct, 1e-30) <= 1e-9);
    }
  }
}

TEST_CASE("g_exact endpoint values") {
  std::mt19937_64 rng(7);
  const testing::Instance inst = testing::random_instance(rng, true);
  const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
  CHECK(g_exact(co, 0.0) == 0.0);
  CHECK(rel_err(g_exact(co, 1.0), (co.a + co.b) / (co.g + co.h)) <= 1e-12);
  CHECK_THROWS_AS(g_exact(co, 1.5), std::invalid_argument);
}

TEST_CASE("g_exact clamps radicand dust and rejects corruption") {
  Coefficients co = testing::rational_instance();
  co.c = 1.0;
  co.f = 1.0 - 5e-13;  // radicand at beta = 1 is -5e-13
  CHECK(g_exact(co, 1.0) == doctest::Approx((co.a + co.b) / (co.g + co.h)));
  co.f = 0.5;  // radicand at beta = 1 is -0.5
  CHECK_THROWS_AS(g_exact(co, 1.0), NumericalDomainError);
}

TEST_CASE("g_exact is non-negative with designed beamformers") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const testing::Instance inst = testing::random_instance(rng, true);
    const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
    for (int j = 0; j <= 20; ++j) CHECK(g_exact(co, j / 20.0) >= 0.0);
  }
}

TEST_CASE("scaling every power by a common factor leaves the SNR unchanged") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    testing::Instance inst = testing::random_instance(rng, true);
    const Coefficients base = compute_coefficients(inst.channels, inst.beamformers, inst.params);
    const double factor = std::pow(10.0, testing::uniform(rng, -3.0, 3.0));
    inst.params.p_max *= factor;
    inst.params.sigma_i_sq *= factor;
    inst.params.sigma_n_sq *= factor;
    const Coefficients scaled = compute_coefficients(inst.channels, inst.beamformers, inst.params);
    for (int j = 1; j <= 10; ++j) {
      CHECK(rel_err(g_exact(scaled, j / 10.0), g_exact(base, j / 10.0)) <= 1e-9);
    }
  }
}

TEST_CASE("derivatives without the radical term") {
  const Coefficients co = testing::rational_instance();
  for (double beta : {0.1, 0.3, 0.5, 0.9}) {
    const Derivatives der = g_derivatives(co, beta);
    // d/db (a b^2 + b b)/(g b + h) = (a g b^2 + 2 a h b + b h) / (g b + h)^2
    const double den = co.g * beta + co.h;
    const double want = (co.a * co.g * beta * beta + 2.0 * co.a * co.h * beta + co.b * co.h) / (den * den);
    CHECK(rel_err(der.first, want) <= 1e-13);
  }
}

TEST_CASE("derivatives agree with central finite differences") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    const testing::Instance inst = testing::random_instance(rng, t % 2 == 0);
    const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
    for (double beta : {0.3, 0.5, 0.7}) {
      const Derivatives der = g_derivatives(co, beta);
      const double g = std::abs(g_exact(co, beta));
      CHECK(std::abs(der.first - testing::central_first(co, beta, 1e-6)) <= 1e-5 * (std::abs(der.first) + g));
      CHECK(std::abs(der.second - testing::central_second(co, beta, 1e-4)) <=
            1e-4 * (std::abs(der.second) + g));
    }
  }
}

TEST_CASE("derivatives refuse a vanishing radicand") {
  std::mt19937_64 rng(11);
  const testing::Instance inst = testing::random_instance(rng, true);
  const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
  CHECK_THROWS_AS(g_derivatives(co, 1.5), SingularPointError);
  Coefficients flat = co;
  flat.d = 0.0;
  flat.e = 0.0;
  flat.f = 0.0;
  CHECK_THROWS_AS(g_derivatives(flat, 0.5), SingularPointError);
}

TEST_CASE("rate") {
  CHECK(rate(0.0) == 0.0);
  CHECK(rate(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rate(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(rate(-1e-3), std::invalid_argument);
}
