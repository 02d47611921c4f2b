#include <cmath>
#include <random>

#include "doctest.h"
#include "irspa/channel.hpp"
#include "irspa/snr_model.hpp"
#include "test_support.hpp"

using namespace irspa;

TEST_CASE("distance between the reference nodes") {
  CHECK(distance({0, 0, 0}, {100, 0, 10}) == doctest::Approx(std::sqrt(10100.0)));
  CHECK(distance({0, 0, 0}, {100, 0, 10}) == doctest::Approx(100.4988).epsilon(1e-6));
  CHECK(distance({0, 0, 0}, {50, 30, 0}) == doctest::Approx(58.3095).epsilon(1e-6));
  CHECK(distance({1, 2, 3}, {1, 2, 3}) == 0.0);
}

TEST_CASE("path_loss") {
  CHECK(path_loss(1.0, 2.1, 1e-3) == 1e-3);
  CHECK(path_loss(1.0, 4.0, 0.5) == 0.5);
  CHECK(path_loss(100.0, 2.1, 1e-3) == doctest::Approx(6.3096e-8).epsilon(1e-4));
  CHECK(path_loss(200.0, 2.1, 1e-3) < path_loss(100.0, 2.1, 1e-3));
  CHECK_THROWS_AS(path_loss(0.5, 2.1, 1e-3), std::invalid_argument);
}

TEST_CASE("geometry and params validation") {
  Geometry geom;
  CHECK_NOTHROW(geom.validate());
  geom.alpha_h = 0.0;
  CHECK_THROWS_AS(geom.validate(), std::invalid_argument);
  geom = Geometry{};
  geom.user_pos = geom.bs_pos;
  CHECK_THROWS_AS(geom.validate(), std::invalid_argument);

  SystemParams params;
  CHECK_NOTHROW(params.validate());
  params.n = 0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params = SystemParams{};
  params.sigma_n_sq = 0.0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}

TEST_CASE("sample_channels shapes and determinism") {
  SystemParams params;
  params.n = 16;
  params.m = 2;
  RandomStream a(Seed{3});
  RandomStream b(Seed{3});
  const ChannelSet ch = sample_channels(Geometry{}, params, a);
  CHECK(ch.g.rows() == 16);
  CHECK(ch.g.cols() == 2);
  CHECK(ch.f.size() == 16);
  CHECK(ch.h.size() == 2);
  CHECK_NOTHROW(ch.validate(params));

  const ChannelSet again = sample_channels(Geometry{}, params, b);
  CHECK(again.g == ch.g);
  CHECK(again.f == ch.f);
  CHECK(again.h == ch.h);
}

TEST_CASE("channel entry variances follow the path loss") {
  const Geometry geom;
  SystemParams params;
  params.n = 1;
  params.m = 2;
  RandomStream rng(Seed{2024});
  double acc_h = 0.0, acc_f = 0.0, acc_g = 0.0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    const ChannelSet ch = sample_channels(geom, params, rng);
    acc_h += norm_sq(ch.h) / 2.0;
    acc_f += norm_sq(ch.f);
    acc_g += (std::norm(ch.g(0, 0)) + std::norm(ch.g(0, 1))) / 2.0;
  }
  const double want_h = path_loss(distance(geom.bs_pos, geom.user_pos), geom.alpha_h, geom.ref_gain);
  const double want_f = path_loss(distance(geom.irs_pos, geom.user_pos), geom.alpha_f, geom.ref_gain);
  const double want_g = path_loss(distance(geom.bs_pos, geom.irs_pos), geom.alpha_g, geom.ref_gain);
  CHECK(testing::rel_err(acc_h / trials, want_h) <= 0.03);
  CHECK(testing::rel_err(acc_f / trials, want_f) <= 0.03);
  CHECK(testing::rel_err(acc_g / trials, want_g) <= 0.03);
}

TEST_CASE("designed beamformers are unit norm and deterministic") {
  RandomStream rng(Seed{8});
  for (std::size_t n : {1, 3, 16, 128}) {
    SystemParams params;
    params.n = n;
    const ChannelSet ch = sample_channels(Geometry{}, params, rng);
    const Beamformers bf = design_beamformers(ch);
    CHECK(std::abs(norm_sq(bf.v) - 1.0) <= 1e-12);
    CHECK(std::abs(norm_sq(bf.theta) - 1.0) <= 1e-12);
    const Beamformers again = design_beamformers(ch);
    CHECK(again.v == bf.v);
    CHECK(again.theta == bf.theta);
  }
}

TEST_CASE("single IRS element is phase aligned with the direct link") {
  SystemParams params;
  params.n = 1;
  params.m = 3;
  RandomStream rng(Seed{15});
  for (int t = 0; t < 20; ++t) {
    const ChannelSet ch = sample_channels(Geometry{}, params, rng);
    const Beamformers bf = design_beamformers(ch);
    CHECK(std::abs(std::abs(bf.theta[0]) - 1.0) <= 1e-12);
    const Complex cascaded = std::conj(bf.theta[0]) * std::conj(ch.f[0]) * matvec(ch.g, bf.v)[0];
    const Complex product = cascaded * std::conj(hermitian_inner(ch.h, bf.v));
    CHECK(product.real() >= 0.0);
    CHECK(std::abs(product.imag()) <= 1e-9 * std::abs(product));
  }
}

TEST_CASE("phase alignment makes the cross coefficient non-negative") {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 1000; ++t) {
    const testing::Instance inst = testing::random_instance(rng, true);
    const Coefficients co = compute_coefficients(inst.channels, inst.beamformers, inst.params);
    CHECK(co.c >= 0.0);
  }
}

TEST_CASE("all-zero direct channel is degenerate") {
  ChannelSet ch;
  ch.g = ComplexMatrix(2, 2);
  ch.f = ComplexVector(2);
  ch.h = ComplexVector(2);
  CHECK_THROWS_AS(design_beamformers(ch), DegenerateChannelError);
}
