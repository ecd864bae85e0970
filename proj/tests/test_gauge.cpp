#include <doctest.h>

#include <cmath>

#include "dyonlab/gauge.hpp"
#include "dyonlab/phase.hpp"
#include "dyonlab/rng.hpp"

using namespace dyonlab;

namespace {

VectorField beta_gradient(const DyonCharge& d, const FluxTube& f) {
  return [d, f](const Vec2& p) { return conjugate_momentum_field(d, f, p); };
}

}  // namespace

TEST_CASE("vector potentials: azimuthal 1/r profile") {
  const auto c = make_constants();
  const FluxTube f = make_flux_tube(c.phi_m0, 0.0, 0.1);

  const auto [A, C] = vector_potentials(f, {1.0, 0.0});
  CHECK(A.x == doctest::Approx(0.0));
  CHECK(A.y == doctest::Approx(c.phi_m0 / kTwoPi).epsilon(1e-14));
  CHECK(C.x == 0.0);
  CHECK(C.y == 0.0);

  // 1/r falloff
  const auto a1 = vector_potentials(f, {1.0, 0.0}).A;
  const auto a2 = vector_potentials(f, {2.0, 0.0}).A;
  CHECK(a1.r() == doctest::Approx(2.0 * a2.r()).epsilon(1e-14));

  // zero fluxes give zero potentials
  const FluxTube zero = make_flux_tube(0.0, 0.0, 0.1);
  const auto [Az, Cz] = vector_potentials(zero, {0.3, -0.8});
  CHECK(Az.r() == 0.0);
  CHECK(Cz.r() == 0.0);
}

TEST_CASE("potentials are exterior-only: inside the tube is a domain error") {
  const FluxTube f = make_flux_tube(1.0, 1.0, 0.5);
  CHECK_THROWS_AS(vector_potentials(f, {0.2, 0.2}), std::domain_error);
  const DyonCharge d{1.0, 0.0, {}};
  CHECK_THROWS_AS(conjugate_momentum_field(d, f, {0.0, 0.3}),
                  std::domain_error);
}

TEST_CASE("conjugate momentum vanishes in the CP-conserving vacuum") {
  const auto c = make_constants();
  const DyonCharge d{c.e, c.g0, {}};
  const FluxTube f = make_flux_tube(c.phi_m0, c.phi_e0, 0.1);
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const double ang = rng.uniform(0.0, kTwoPi);
    const double r = rng.uniform(0.2, 5.0);
    const Vec2 p{r * std::cos(ang), r * std::sin(ang)};
    CHECK(conjugate_momentum_field(d, f, p).r() < 1e-14);
  }
}

TEST_CASE("CP-violating vacuum: |qA + gC| = theta/(2 pi r)") {
  const auto c = make_constants();
  const double theta = 1.7;
  const auto d = witten_charges(1, 1, theta, c);
  const FluxTube f = make_flux_tube(c.phi_m0, c.phi_e0, 0.1);
  for (double r : {0.5, 1.0, 3.7}) {
    const auto v = conjugate_momentum_field(d, f, {r, 0.0});
    CHECK(v.r() == doctest::Approx(theta / (kTwoPi * r)).epsilon(1e-12));
  }
  // theta = 0 reduces to the zero vector
  const auto d0 = witten_charges(1, 1, 0.0, c);
  CHECK(conjugate_momentum_field(d0, f, {1.3, 0.4}).r() < 1e-14);
}

TEST_CASE("plane path azimuth unwrapping and winding numbers") {
  CHECK(winding_number(PlanePath::circle(1.0, 1)) == 1);
  CHECK(winding_number(PlanePath::circle(1.0, -2)) == -2);

  // loop not enclosing the origin
  CHECK(winding_number(PlanePath::circle(0.5, 1, 720, {3.0, 0.0})) == 0);

  // open path is a contract violation for winding_number
  PlanePath open_path({{1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, false);
  CHECK_THROWS_AS(winding_number(open_path), std::invalid_argument);

  // antipodal hop aliases the azimuth; the constructor rejects it
  CHECK_THROWS_AS(PlanePath({{1.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}}, true),
                  std::invalid_argument);
}

TEST_CASE("loop integral of grad beta equals theta per winding") {
  const auto c = make_constants();
  const double theta = std::numbers::pi / 3.0;
  const auto d = witten_charges(1, 1, theta, c);
  const FluxTube f = make_flux_tube(c.phi_m0, c.phi_e0, 0.05);
  const auto field = beta_gradient(d, f);

  const auto circle = PlanePath::circle(1.0, 1, 1024);
  const double fine = circle.length() / (1 << 18);
  CHECK(std::abs(line_integral(field, circle, fine, f.radius_eps) - theta) <
        1e-10);

  const auto twice = PlanePath::circle(1.0, 2, 1024);
  CHECK(std::abs(line_integral(field, twice, fine, f.radius_eps) -
                 2.0 * theta) < 1e-10);

  const auto outside = PlanePath::circle(0.4, 1, 1024, {2.0, 0.5});
  CHECK(std::abs(line_integral(field, outside, fine, f.radius_eps)) < 1e-10);
}

TEST_CASE("closed loops measure winding times enclosed flux") {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const DyonCharge d{rng.uniform(-3, 3), rng.uniform(-3, 3), {}};
    const FluxTube f = make_flux_tube(rng.uniform(-15, 15), rng.uniform(-15, 15),
                                      0.05);
    int w = rng.uniform_int(-3, 3);
    if (w == 0) w = 2;
    const auto loop = PlanePath::circle(rng.uniform(0.6, 2.2), w, 720);
    const double got = line_integral(beta_gradient(d, f), loop,
                                     loop.length() / (1 << 20), f.radius_eps);
    const double want = w * (d.q * f.phi_m - d.g * f.phi_e);
    CHECK(std::abs(got - want) < 1e-8);
  }
}

TEST_CASE("line integral additivity under concatenation") {
  const auto c = make_constants();
  const auto d = witten_charges(1, 1, 2.1, c);
  const FluxTube f = make_flux_tube(c.phi_m0, c.phi_e0, 0.05);
  const auto field = beta_gradient(d, f);

  const auto loop = PlanePath::circle(1.3, 1, 512);
  const auto& pts = loop.points();
  const std::size_t cut = pts.size() / 3;
  const PlanePath first(std::vector<Vec2>(pts.begin(), pts.begin() + cut + 1),
                        false);
  const PlanePath second(std::vector<Vec2>(pts.begin() + cut, pts.end()),
                         false);
  const double step = loop.length() / (1 << 14);
  const double whole = line_integral(field, loop, step, f.radius_eps);
  const double parts = line_integral(field, first, step, f.radius_eps) +
                       line_integral(field, second, step, f.radius_eps);
  CHECK(std::abs(whole - parts) < 1e-10);
}

TEST_CASE("a path crossing the tube is a domain error") {
  const DyonCharge d{1.0, 0.0, {}};
  const FluxTube f = make_flux_tube(5.0, 0.0, 0.3);
  // segment passes straight over the origin with endpoints outside
  const PlanePath path({{-1.0, 0.1}, {1.0, 0.1}, {1.0, 1.0}}, false);
  CHECK_THROWS_AS(
      line_integral(beta_gradient(d, f), path, 0.01, f.radius_eps),
      std::domain_error);
}

TEST_CASE("open-path line integral tracks the analytic azimuth change") {
  const auto c = make_constants();
  const double theta = 2.7;
  const auto d = witten_charges(1, 1, theta, c);
  const FluxTube f = make_flux_tube(c.phi_m0, c.phi_e0, 0.05);

  // quarter arc at radius 2: delta phi = pi/2, integral = theta/4
  std::vector<Vec2> pts;
  for (int i = 0; i <= 256; ++i) {
    const double a = 0.5 * std::numbers::pi * i / 256;
    pts.push_back({2.0 * std::cos(a), 2.0 * std::sin(a)});
  }
  const PlanePath arc(std::move(pts), false);
  const double got = line_integral(beta_gradient(d, f), arc,
                                   arc.length() / (1 << 16), f.radius_eps);
  CHECK(got == doctest::Approx(theta / 4.0).epsilon(1e-9));
}
