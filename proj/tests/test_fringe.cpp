#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dyonlab/charges.hpp"
#include "dyonlab/fringe.hpp"

using namespace dyonlab;

namespace {

SlitGeometry reference_slits() {
  return SlitGeometry{1000.0, 10.0, 2.0, 1.0, 0.0};
}

}  // namespace

TEST_CASE("fringe geometry validation") {
  SlitGeometry g = reference_slits();
  g.screen_distance = 150.0;  // L < 20 d
  CHECK_THROWS_AS(fringe_shift(g, 0.0), std::domain_error);

  g = reference_slits();
  g.slit_width = 12.0;  // w >= d
  CHECK_THROWS_AS(fringe_shift(g, 0.0), std::domain_error);
}

TEST_CASE("no phase, no shift") {
  const auto p = fringe_shift(reference_slits(), 0.0);
  CHECK(p.period == doctest::Approx(100.0));
  CHECK(std::abs(p.delta_x) < 0.5);
}

TEST_CASE("theta = pi shifts the pattern by half a period") {
  const auto p = fringe_shift(reference_slits(), std::numbers::pi);
  CHECK(fringe_distance(p.delta_x, 50.0, p.period) < 1.0);
}

TEST_CASE("shift follows L lambda / d times (delta0_bar + theta / 2 pi)") {
  for (double theta : {0.0, 0.5 * std::numbers::pi, std::numbers::pi, 2.2}) {
    for (double d0 : {0.0, 0.1}) {
      SlitGeometry g = reference_slits();
      g.delta0_bar = d0;
      const auto p = fringe_shift(g, theta);
      const double predicted = p.period * (d0 + theta / kTwoPi);
      CHECK(fringe_distance(p.delta_x, predicted, p.period) <
            0.02 * p.period);
    }
  }
}

TEST_CASE("theta + 2 pi reproduces the same pattern") {
  const auto a = fringe_shift(reference_slits(), 1.3);
  const auto b = fringe_shift(reference_slits(), 1.3 + kTwoPi);
  REQUIRE(a.intensity.size() == b.intensity.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.intensity.size(); ++i) {
    worst = std::max(worst, std::abs(a.intensity[i] - b.intensity[i]));
  }
  const double scale = *std::max_element(a.intensity.begin(), a.intensity.end());
  CHECK(worst < 1e-12 * scale);
}

TEST_CASE("geometry scaling: the shift tracks L lambda / d") {
  const SlitGeometry g{4000.0, 20.0, 3.0, 2.0, 0.0};
  const auto p = fringe_shift(g, std::numbers::pi / 2.0);
  const double period = 4000.0 * 2.0 / 20.0;
  CHECK(p.period == doctest::Approx(period));
  CHECK(fringe_distance(p.delta_x, 0.25 * period, period) < 0.02 * period);
}
