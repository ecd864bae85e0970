#include <doctest.h>

#include <cmath>
#include <memory>

#include "dyonlab/evolve.hpp"
#include "dyonlab/rng.hpp"

using namespace dyonlab;

namespace {

std::shared_ptr<const Grid2D> tube_grid() {
  return std::make_shared<const Grid2D>(
      Grid2D::with_tube(48, 48, 1.0, {23.5, 23.5}, 1.0));
}

// exact edge integral of the azimuthal coupling: alpha_eff times the signed
// angle between the tube-centred endpoint vectors
double edge_phase_oracle(double alpha_eff, Vec2 a, Vec2 b) {
  return alpha_eff * std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
}

}  // namespace

TEST_CASE("grid construction rules") {
  CHECK_THROWS_AS(Grid2D::plain(7, 64, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid2D::plain(64, 22, 1.0), std::invalid_argument);  // 22 = 2*11
  CHECK_THROWS_AS(Grid2D::plain(64, 64, 0.0), std::invalid_argument);
  CHECK_NOTHROW(Grid2D::plain(48, 160, 0.5));

  // tube centre on a node is rejected
  CHECK_THROWS_AS(Grid2D::with_tube(48, 48, 1.0, {24.0, 24.0}, 1.0),
                  std::invalid_argument);

  // radius one cell excludes exactly the four plaquette corners
  const auto g = Grid2D::with_tube(48, 48, 1.0, {23.5, 23.5}, 1.0);
  int excluded = 0;
  for (int j = 0; j < 48; ++j) {
    for (int i = 0; i < 48; ++i) {
      if (!g.active(i, j)) ++excluded;
    }
  }
  CHECK(excluded == 4);
  CHECK_FALSE(g.active(23, 23));
  CHECK_FALSE(g.active(24, 24));
  CHECK(g.tube_ring().size() == 12);
}

TEST_CASE("link phases agree with the exact azimuth-difference integral") {
  const auto gp = tube_grid();
  const DyonCharge d{1.0, 0.0, {}};
  const double alpha = 0.437;
  const FluxTube f = make_flux_tube(kTwoPi * alpha, 0.0, 1.0);
  const LinkField links = build_link_phases(*gp, d, f);
  CHECK(links.alpha_eff == doctest::Approx(alpha).epsilon(1e-14));

  const Vec2 c = gp->tube_center();
  double worst = 0.0;
  // every edge of the tube plaquette plus a sweep of bulk edges
  for (auto [i, j] : {std::pair{23, 23}, {23, 24}, {24, 23}, {0, 0}, {40, 7},
                      {23, 20}, {10, 44}, {46, 23}}) {
    const Vec2 a = gp->node(i, j) - c;
    worst = std::max(worst,
                     std::abs(links.ax[gp->index(i, j)] -
                              edge_phase_oracle(alpha, a, gp->node(i + 1, j) - c)));
    worst = std::max(worst,
                     std::abs(links.ay[gp->index(i, j)] -
                              edge_phase_oracle(alpha, a, gp->node(i, j + 1) - c)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("plaquette circulation: zero outside, 2 pi alpha_eff at the tube") {
  const auto gp = tube_grid();
  const auto consts = make_constants();

  SUBCASE("zero fluxes: all link phases vanish") {
    const DyonCharge d{1.0, 2.0, {}};
    const FluxTube f = make_flux_tube(0.0, 0.0, 1.0);
    const LinkField links = build_link_phases(*gp, d, f);
    CHECK(links.trivial);
  }

  SUBCASE("one flux quantum: tube circulation 2 pi") {
    const DyonCharge d{consts.e, 0.0, {}};
    const FluxTube f = make_flux_tube(consts.phi_m0, 0.0, 1.0);
    const LinkField links = build_link_phases(*gp, d, f);
    CHECK(std::abs(plaquette_circulation(*gp, links, 23, 23) - kTwoPi) < 1e-10);
  }

  SUBCASE("CP-conserving vacuum: every circulation vanishes") {
    // e phi_m0 - g0 phi_e0 = 0 up to round-off, so alpha_eff ~ 1e-17
    const DyonCharge d{consts.e, consts.g0, {}};
    const FluxTube f = make_flux_tube(consts.phi_m0, consts.phi_e0, 1.0);
    const LinkField links = build_link_phases(*gp, d, f);
    double worst = 0.0;
    for (int j = 0; j + 1 < gp->ny(); ++j) {
      for (int i = 0; i + 1 < gp->nx(); ++i) {
        worst = std::max(worst,
                         std::abs(plaquette_circulation(*gp, links, i, j)));
      }
    }
    CHECK(worst < 1e-12);
  }

  SUBCASE("generic alpha_eff") {
    const DyonCharge d{1.0, 0.0, {}};
    const FluxTube f = make_flux_tube(kTwoPi * 0.731, 0.0, 1.0);
    const LinkField links = build_link_phases(*gp, d, f);
    double worst_away = 0.0;
    for (int j = 0; j + 1 < gp->ny(); ++j) {
      for (int i = 0; i + 1 < gp->nx(); ++i) {
        const double circ = plaquette_circulation(*gp, links, i, j);
        if (i == 23 && j == 23) {
          CHECK(std::abs(circ - kTwoPi * 0.731) < 1e-10);
        } else {
          worst_away = std::max(worst_away, std::abs(circ));
        }
      }
    }
    CHECK(worst_away < 1e-10);
  }

  SUBCASE("tube centre on an edge is a construction error") {
    const auto g_edge = Grid2D::with_tube(48, 48, 1.0, {24.0, 23.5}, 1.0);
    const DyonCharge d{1.0, 0.0, {}};
    const FluxTube f = make_flux_tube(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(build_link_phases(g_edge, d, f), std::invalid_argument);
  }
}

TEST_CASE("free packet dispersion matches the closed-form Gaussian") {
  // sigma(t)^2 = sigma0^2 + (t/(2 m sigma0))^2 and the centre phase is
  // -atan(t/(2 m sigma0^2)); both from the exact free Gaussian solution
  const auto gp =
      std::make_shared<const Grid2D>(Grid2D::plain(160, 160, 1.0));
  const double sigma0 = 6.0;
  const Vec2 center{79.5, 79.5};
  const auto psi0 = WaveField::gaussian_packet(gp, center, sigma0, {0.0, 0.0});

  EvolveConfig cfg;
  cfg.dt = 0.2;
  cfg.steps = 500;
  EvolveStats stats{};
  const auto psi = evolve(psi0, cfg, &stats);
  const double t = cfg.dt * cfg.steps;

  CHECK(stats.max_norm_drift_per_step < 1e-10);
  CHECK(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));

  double mean = 0.0, var = 0.0, total = 0.0;
  for (int j = 0; j < 160; ++j) {
    for (int i = 0; i < 160; ++i) {
      const double w = std::norm(psi.at(i, j));
      total += w;
      mean += w * i;
    }
  }
  mean /= total;
  for (int j = 0; j < 160; ++j) {
    for (int i = 0; i < 160; ++i) {
      var += std::norm(psi.at(i, j)) * (i - mean) * (i - mean);
    }
  }
  var /= total;

  const double predicted_var =
      sigma0 * sigma0 + (t / (2.0 * sigma0)) * (t / (2.0 * sigma0));
  CHECK(mean == doctest::Approx(79.5).epsilon(1e-6));
  CHECK(var == doctest::Approx(predicted_var).epsilon(0.01));

  const double predicted_phase = -std::atan(t / (2.0 * sigma0 * sigma0));
  CHECK(std::arg(psi.at(79, 79)) ==
        doctest::Approx(predicted_phase).epsilon(0.02));
}

TEST_CASE("excluded nodes stay pinned to zero through evolution") {
  const auto gp = tube_grid();
  const DyonCharge d{1.0, 0.0, {}};
  const FluxTube f = make_flux_tube(kTwoPi * 0.5, 0.0, 1.0);
  EvolveConfig cfg;
  cfg.dt = 0.5;
  cfg.steps = 60;
  cfg.links = build_link_phases(*gp, d, f);
  // packet aimed straight at the tube
  const auto psi0 =
      WaveField::gaussian_packet(gp, {10.0, 23.5}, 4.0, {0.6, 0.0});
  const auto psi = evolve(psi0, cfg);
  CHECK(std::abs(psi.at(23, 23)) == 0.0);
  CHECK(std::abs(psi.at(24, 23)) == 0.0);
  CHECK(std::abs(psi.at(23, 24)) == 0.0);
  CHECK(std::abs(psi.at(24, 24)) == 0.0);
  CHECK(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gauge covariance: transformed field and links give identical densities") {
  const auto gp = tube_grid();
  const DyonCharge d{1.0, 0.0, {}};
  const FluxTube f = make_flux_tube(kTwoPi * 0.37, 0.0, 1.0);
  EvolveConfig cfg;
  cfg.dt = 0.5;
  cfg.steps = 20;
  cfg.links = build_link_phases(*gp, d, f);

  WaveField psi = WaveField::gaussian_packet(gp, {12.0, 12.0}, 4.0, {0.4, 0.3});
  WaveField psi_t = psi;
  LinkField links_t = cfg.links;
  Rng rng(77);
  std::vector<double> lambda(gp->size());
  for (auto& l : lambda) l = rng.uniform(-std::numbers::pi, std::numbers::pi);
  apply_gauge_transform(psi_t, links_t, lambda);

  const WaveField a = evolve(psi, cfg);
  EvolveConfig cfg_t = cfg;
  cfg_t.links = links_t;
  const WaveField b = evolve(psi_t, cfg_t);

  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst,
                     std::abs(std::norm(a.data()[i]) - std::norm(b.data()[i])));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("serial and parallel kernels produce the same evolution") {
  const auto gp = tube_grid();
  const DyonCharge d{1.0, 0.0, {}};
  const FluxTube f = make_flux_tube(kTwoPi * 0.5, 0.0, 1.0);
  EvolveConfig cfg;
  cfg.dt = 0.5;
  cfg.steps = 40;
  cfg.links = build_link_phases(*gp, d, f);
  const auto psi0 =
      WaveField::gaussian_packet(gp, {12.0, 34.0}, 4.0, {0.5, -0.3});

  cfg.policy = ExecPolicy::parallel;
  const auto a = evolve(psi0, cfg);
  cfg.policy = ExecPolicy::serial;
  const auto b = evolve(psi0, cfg);

  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("absorbing mask drains norm near the boundary") {
  const auto gp = std::make_shared<const Grid2D>(Grid2D::plain(96, 96, 1.0));
  EvolveConfig cfg;
  cfg.dt = 0.5;
  cfg.steps = 200;
  cfg.absorb_margin = 16;
  // packet flying into the right wall
  const auto psi0 =
      WaveField::gaussian_packet(gp, {40.0, 48.0}, 6.0, {0.8, 0.0});
  const auto psi = evolve(psi0, cfg);
  CHECK(psi.norm_squared() < 0.2);  // most of it absorbed, not reflected
}

TEST_CASE("instability guard aborts with a diagnostic") {
  const auto gp = std::make_shared<const Grid2D>(Grid2D::plain(32, 32, 1.0));
  EvolveConfig cfg;
  cfg.dt = 0.5;
  cfg.steps = 5;
  cfg.instability_growth = -0.5;  // any step trips the guard
  const auto psi0 = WaveField::gaussian_packet(gp, {16.0, 16.0}, 4.0, {0, 0});
  CHECK_THROWS_AS(evolve(psi0, cfg), std::runtime_error);
}

TEST_CASE("lattice group velocity reduces to k/m for small k") {
  const Vec2 v = lattice_group_velocity({0.01, 0.02}, 1.0, 1.0, 0.5);
  CHECK(v.x == doctest::Approx(0.01).epsilon(1e-4));
  CHECK(v.y == doctest::Approx(0.02).epsilon(1e-4));
}
