#include <doctest.h>

#include <cmath>

#include "dyonlab/charges.hpp"
#include "dyonlab/rng.hpp"
#include "dyonlab/scattering.hpp"

using namespace dyonlab;

TEST_CASE("closed form: pinned values") {
  // theta = pi, k = 1, phi = pi: sin^2(pi/2) / (2 pi sin^2(pi/2)) = 1/(2 pi)
  CHECK(theta_cross_section(std::numbers::pi, 1.0, std::numbers::pi) ==
        doctest::Approx(0.15915494309189535).epsilon(1e-12));
  // CP-conserving theta = 0 does not scatter
  for (double phi : {0.5, 2.0, 4.0}) {
    CHECK(theta_cross_section(0.0, 1.0, phi) == 0.0);
    CHECK(theta_cross_section(kTwoPi, 1.0, phi) ==
          doctest::Approx(0.0).epsilon(1e-30));
  }
}

TEST_CASE("closed form symmetries") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double theta = rng.uniform(-8, 8);
    const double k = rng.uniform(0.2, 4.0);
    const double phi = rng.uniform(0.3, kTwoPi - 0.3);
    // 2 pi periodicity in theta
    CHECK(std::abs(theta_cross_section(theta, k, phi) -
                   theta_cross_section(theta + kTwoPi, k, phi)) < 1e-12);
    // 1/k scaling
    CHECK(std::abs(theta_cross_section(theta, k, phi) * k -
                   theta_cross_section(theta, 1.0, phi)) < 1e-12);
    // reflection about phi = pi
    CHECK(std::abs(theta_cross_section(theta, k, phi) -
                   theta_cross_section(theta, k, kTwoPi - phi)) < 1e-12);
  }
}

TEST_CASE("ab_cross_section is theta_cross_section at theta = 2 pi alpha") {
  CHECK(ab_cross_section(0.5, 1.0, std::numbers::pi) ==
        doctest::Approx(1.0 / kTwoPi).epsilon(1e-12));
  for (double alpha : {0.3, 0.77}) {
    for (double phi : {1.0, 2.5}) {
      CHECK(ab_cross_section(alpha, 2.0, phi) ==
            doctest::Approx(theta_cross_section(kTwoPi * alpha, 2.0, phi))
                .epsilon(1e-14));
    }
  }
  // integer alpha: trivial phase, no scattering
  for (double phi : {0.5, 2.0}) {
    CHECK(ab_cross_section(1.0, 1.0, phi) == doctest::Approx(0.0).epsilon(1e-28));
    CHECK(ab_cross_section(3.0, 1.0, phi) == doctest::Approx(0.0).epsilon(1e-28));
  }
}

TEST_CASE("forward cutoff raises a divergence error") {
  CHECK_THROWS_AS(theta_cross_section(1.0, 1.0, 5e-4), std::domain_error);
  CHECK_THROWS_AS(theta_cross_section(1.0, 1.0, kTwoPi - 5e-4),
                  std::domain_error);
  CHECK_THROWS_AS(theta_cross_section(1.0, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(partial_wave_cross_section(0.3, 1.0, 1e-4),
                  std::domain_error);
  CHECK_THROWS_AS(partial_wave_cross_section(0.3, 1.0, 1.0, 50),
                  std::domain_error);
}

TEST_CASE("partial-wave oracle: pinned cases") {
  // alpha = 0: every phase shift vanishes
  const auto zero = partial_wave_cross_section(0.0, 1.0, 2.0);
  CHECK(zero.value == doctest::Approx(0.0).epsilon(1e-20));

  // alpha = 1/2 backscattering reproduces 1/(2 pi)
  const auto half = partial_wave_cross_section(0.5, 1.0, std::numbers::pi);
  CHECK(half.value ==
        doctest::Approx(1.0 / kTwoPi).epsilon(1e-3));

  // alpha reduced mod 1, integer part reported
  const auto shifted = partial_wave_cross_section(2.3, 1.0, 2.0);
  CHECK(shifted.alpha_integer == 2);
  CHECK(shifted.alpha_reduced == doctest::Approx(0.3).epsilon(1e-12));
  const auto base = partial_wave_cross_section(0.3, 1.0, 2.0);
  CHECK(shifted.value == doctest::Approx(base.value).epsilon(1e-12));
}

TEST_CASE("oracle equivalence with the closed form over the angle grid") {
  for (int ai = 1; ai <= 9; ++ai) {
    const double alpha = 0.1 * ai;
    for (int p = 0; p <= 8; ++p) {
      const double phi = std::numbers::pi / 6.0 +
                         (std::numbers::pi - std::numbers::pi / 6.0) * p / 8.0;
      const double closed = ab_cross_section(alpha, 1.0, phi);
      const auto oracle = partial_wave_cross_section(alpha, 1.0, phi);
      CHECK(std::abs(oracle.value - closed) <= 1e-3 * closed);
    }
  }
}

TEST_CASE("alpha and 1 - alpha scatter identically at phi = pi") {
  for (double alpha : {0.2, 0.35, 0.45}) {
    const auto a = partial_wave_cross_section(alpha, 1.0, std::numbers::pi);
    const auto b =
        partial_wave_cross_section(1.0 - alpha, 1.0, std::numbers::pi);
    CHECK(a.value == doctest::Approx(b.value).epsilon(2e-3));
  }
}

TEST_CASE("cesaro regularization agrees with abel") {
  for (double alpha : {0.25, 0.6}) {
    for (double phi : {std::numbers::pi / 3.0, std::numbers::pi}) {
      const auto abel =
          partial_wave_cross_section(alpha, 1.0, phi, 2000, Regularization::abel);
      const auto ces = partial_wave_cross_section(alpha, 1.0, phi, 2000,
                                                  Regularization::cesaro);
      CHECK(ces.value == doctest::Approx(abel.value).epsilon(5e-3));
    }
  }
}

TEST_CASE("angle profile: parallel equals serial bit for bit") {
  std::vector<double> phis;
  for (int i = 0; i < 24; ++i) {
    phis.push_back(0.6 + 5.0 * i / 23.0);
  }
  const auto par = partial_wave_profile(0.37, 1.3, phis, 1200,
                                        Regularization::abel,
                                        AnglePolicy::parallel);
  const auto ser = partial_wave_profile(0.37, 1.3, phis, 1200,
                                        Regularization::abel,
                                        AnglePolicy::serial);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].value == ser[i].value);
  }
}
