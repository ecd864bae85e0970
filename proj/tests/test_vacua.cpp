#include <doctest.h>

#include <cmath>
#include <complex>

#include "dyonlab/charges.hpp"
#include "dyonlab/rng.hpp"
#include "dyonlab/vacua.hpp"

using namespace dyonlab;

TEST_CASE("dyon state factor") {
  const double theta = 0.9;
  CHECK(std::abs(dyon_state_factor(1, theta, 0.0) -
                 std::polar(1.0, theta)) < 1e-15);
  CHECK(std::abs(dyon_state_factor(0, 0.0, 123.0) - Complex{1.0, 0.0}) < 1e-15);

  // another full turn reindexes the winding number
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const long n = rng.uniform_int(-40, 40);
    const double th = rng.uniform(-8.0, 8.0);
    const double phi = rng.uniform(-20.0, 20.0);
    CHECK(std::abs(dyon_state_factor(n, th, phi + kTwoPi) -
                   dyon_state_factor(n + 1, th, phi)) < 1e-12);
  }
}

TEST_CASE("theta vacuum amplitudes") {
  SUBCASE("theta = 0: all ones") {
    const auto v = build_theta_vacuum(0.0, 2);
    for (int n = -2; n <= 2; ++n) {
      CHECK(std::abs(v.state.amplitude(n) - Complex{1.0, 0.0}) < 1e-15);
    }
  }
  SUBCASE("theta = pi: alternating signs") {
    const auto v = build_theta_vacuum(std::numbers::pi, 2);
    for (int n = -2; n <= 2; ++n) {
      const double want = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(v.state.amplitude(n) - Complex{want, 0.0}) < 1e-14);
    }
  }
  SUBCASE("unit modulus everywhere, unnormalized by default") {
    const auto v = build_theta_vacuum(1.234, 7);
    for (int n = -7; n <= 7; ++n) {
      CHECK(std::abs(std::abs(v.state.amplitude(n)) - 1.0) < 1e-15);
    }
    CHECK(v.state.norm_squared() == doctest::Approx(15.0).epsilon(1e-14));
  }
  SUBCASE("normalized flag scales to unit norm") {
    const auto v = build_theta_vacuum(1.234, 7, true);
    CHECK(v.state.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("M < 1 rejected") {
    CHECK_THROWS_AS(build_theta_vacuum(0.0, 0), std::domain_error);
  }
}

TEST_CASE("winding shift moves amplitudes up by one") {
  WindingState delta(4);
  delta.set_amplitude(0, {1.0, 0.0});
  const auto shifted = winding_shift(delta);
  CHECK(std::abs(shifted.amplitude(1) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(shifted.amplitude(0)) == 0.0);

  // two shifts compose
  const auto twice = winding_shift(shifted);
  CHECK(std::abs(twice.amplitude(2) - Complex{1.0, 0.0}) < 1e-15);

  // the top amplitude leaves the window and is reported as boundary loss
  WindingState top(3);
  top.set_amplitude(3, {0.0, 2.0});
  double loss = 0.0;
  const auto gone = winding_shift(top, &loss);
  CHECK(loss == doctest::Approx(4.0));
  CHECK(gone.norm_squared() == doctest::Approx(0.0));
}

TEST_CASE("shift of a theta vacuum multiplies interior amplitudes by e^{-i theta}") {
  const double theta = 0.77;
  const auto v = build_theta_vacuum(theta, 12);
  const auto shifted = winding_shift(v.state);
  const Complex eig = std::polar(1.0, -theta);
  for (int n = -11; n <= 11; ++n) {
    CHECK(std::abs(shifted.amplitude(n) - eig * v.state.amplitude(n)) < 1e-14);
  }
}

TEST_CASE("eigenvalue residual is round-off for exact theta vacua") {
  Rng rng(7);
  for (int m : {10, 100, 1000, 10000}) {
    const double theta = rng.uniform(-8.0, 8.0);
    CHECK(eigenvalue_residual(build_theta_vacuum(theta, m)) < 1e-12);
  }
  // theta = 0: the shift is the identity on interior components
  CHECK(eigenvalue_residual(build_theta_vacuum(0.0, 50)) < 1e-15);
}

TEST_CASE("overlap: norm, Dirichlet kernel, and orthogonal pairs") {
  const int m = 100;
  const auto v = build_theta_vacuum(0.4, m);
  CHECK(std::abs(overlap(v.state, v.state) -
                 Complex{2.0 * m + 1.0, 0.0}) < 1e-10);

  // independent oracle: the geometric sum sum_{n=-M}^{M} e^{i n d} as an
  // explicit accumulation at long-double precision
  const auto dirichlet = [m](double d) {
    std::complex<long double> acc{0.0L, 0.0L};
    for (int n = -m; n <= m; ++n) {
      acc += std::complex<long double>(std::cos(static_cast<long double>(n) * d),
                                       std::sin(static_cast<long double>(n) * d));
    }
    return acc;
  };

  Rng rng(9);
  for (int i = 0; i < 25; ++i) {
    const double t1 = rng.uniform(-4.0, 4.0);
    const double t2 = rng.uniform(-4.0, 4.0);
    const auto a = build_theta_vacuum(t1, m);
    const auto b = build_theta_vacuum(t2, m);
    const auto z = overlap(a.state, b.state);
    const auto want = dirichlet(t2 - t1);
    CHECK(std::abs(z - Complex(static_cast<double>(want.real()),
                               static_cast<double>(want.imag()))) < 1e-9);
  }

  // theta' - theta = 2 pi / (2M+1) lands on a Dirichlet zero
  const double dtheta = kTwoPi / (2.0 * m + 1.0);
  const auto b = build_theta_vacuum(0.4 + dtheta, m);
  CHECK(std::abs(overlap(v.state, b.state)) < 1e-10);
}

TEST_CASE("theta vacuum periodicity under theta -> theta + 2 pi") {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const double theta = rng.uniform(-8.0, 8.0);
    const int m = rng.uniform_int(2, 40);
    const auto a = build_theta_vacuum(theta, m);
    const auto b = build_theta_vacuum(theta + kTwoPi, m);
    for (int n = -m; n <= m; ++n) {
      CHECK(std::abs(a.state.amplitude(n) - b.state.amplitude(n)) < 1e-12);
    }
  }
}
