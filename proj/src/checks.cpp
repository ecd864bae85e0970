#include "dyonlab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "dyonlab/charges.hpp"
#include "dyonlab/evolve.hpp"
#include "dyonlab/gauge.hpp"
#include "dyonlab/phase.hpp"
#include "dyonlab/rng.hpp"
#include "dyonlab/scattering.hpp"
#include "dyonlab/two_path.hpp"
#include "dyonlab/vacua.hpp"

namespace dyonlab {

namespace {

std::string deviation_detail(double worst, double tol) {
  std::ostringstream os;
  os.precision(3);
  os << "worst deviation " << worst << " (tolerance " << tol << ")";
  return os.str();
}

CheckResult bounded(const std::string& group, const std::string& name,
                    double worst, double tol) {
  return CheckResult{group, name, worst <= tol, deviation_detail(worst, tol)};
}

DyonCharge random_dyon(Rng& rng) {
  return DyonCharge{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), {}};
}

FluxTube random_tube(Rng& rng) {
  return make_flux_tube(rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0),
                        0.05);
}

// --- units_charges ---------------------------------------------------------

void checks_units(std::vector<CheckResult>& out, Rng& rng) {
  const auto c = make_constants();

  double worst = 0.0;
  for (double alpha : {0.25, 1.0 / 137.035999084, 0.9, 3.7}) {
    const auto cc = make_constants(alpha);
    worst = std::max(worst, std::abs(cc.e * cc.g0 - 0.5));
    worst = std::max(worst, std::abs(cc.e * cc.phi_m0 - kTwoPi));
    worst = std::max(worst, std::abs(cc.g0 * cc.phi_e0 - kTwoPi));
  }
  out.push_back(bounded("units", "charge and flux quantum identities", worst,
                        1e-12));

  worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const auto d1 = random_dyon(rng);
    const auto d2 = random_dyon(rng);
    worst = std::max(worst, std::abs(sz_pairing(d1, d2) + sz_pairing(d2, d1)));
  }
  out.push_back(bounded("units", "sz_pairing antisymmetry", worst, 0.0));

  worst = 0.0;
  for (int s = 0; s < 500; ++s) {
    const int nq1 = rng.uniform_int(-6, 6), ng1 = rng.uniform_int(-6, 6);
    const int nq2 = rng.uniform_int(-6, 6), ng2 = rng.uniform_int(-6, 6);
    const double theta = rng.uniform(-12.0, 12.0);
    const double pairing = sz_pairing(witten_charges(nq1, ng1, theta, c),
                                      witten_charges(nq2, ng2, theta, c));
    worst = std::max(worst, std::abs(pairing - 0.5 * (nq1 * ng2 - nq2 * ng1)));
  }
  out.push_back(
      bounded("units", "sz_pairing theta-independence on the lattice", worst,
              1e-9));

  worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const auto d = random_dyon(rng);
    const auto f = random_tube(rng);
    const double before = d.q * f.phi_m - d.g * f.phi_e;
    const auto [dr, fr] = duality_rotate(d, f, rng.uniform(-7.0, 7.0));
    const double after = dr.q * fr.phi_m - dr.g * fr.phi_e;
    worst = std::max(worst, std::abs(after - before) /
                                std::max(1.0, std::abs(before)));
  }
  out.push_back(
      bounded("units", "duality rotation preserves q phi_m - g phi_e", worst,
              1e-12));

  worst = 0.0;
  for (int s = 0; s < 300; ++s) {
    const int nq = rng.uniform_int(-6, 6), ng = rng.uniform_int(-6, 6);
    const double theta = rng.uniform(-12.0, 12.0);
    const auto a = witten_charges(nq, ng, theta + kTwoPi, c);
    const auto b = witten_charges(nq + ng, ng, theta, c);
    worst = std::max({worst, std::abs(a.q - b.q), std::abs(a.g - b.g)});
  }
  out.push_back(
      bounded("units", "witten charge periodicity in theta", worst, 1e-12));
}

// --- phase_engine -----------------------------------------------------------

void checks_phase(std::vector<CheckResult>& out, Rng& rng) {
  const auto c = make_constants();

  double worst = 0.0;
  for (int s = 0; s < 300; ++s) {
    const auto d = random_dyon(rng);
    const auto f = random_tube(rng);
    const long n1 = rng.uniform_int(-5, 5), n2 = rng.uniform_int(-5, 5);
    worst = std::max(worst,
                     std::abs(dyon_phase(d, f, n1 + n2).value -
                              dyon_phase(d, f, n1).value -
                              dyon_phase(d, f, n2).value));
  }
  out.push_back(bounded("phase", "winding additivity", worst, 1e-12));

  worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto d = random_dyon(rng);
    const auto f = random_tube(rng);
    const long n = rng.uniform_int(-4, 4);
    const double base = dyon_phase(d, f, n).value;
    const auto [dr, fr] = duality_rotate(d, f, rng.uniform(-7.0, 7.0));
    worst = std::max(worst, std::abs(dyon_phase(dr, fr, n).value - base) /
                                std::max(1.0, std::abs(base)));
  }
  out.push_back(bounded("phase", "duality invariance of the dyon phase", worst,
                        1e-12));

  worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const int nq = rng.uniform_int(-6, 6), ng = rng.uniform_int(-6, 6);
    const double theta = rng.uniform(-12.0, 12.0);
    const auto f = random_tube(rng);
    const long n = rng.uniform_int(-5, 5);
    const double a =
        dyon_phase(witten_charges(nq, ng, theta + kTwoPi, c), f, n).value;
    const double b =
        dyon_phase(witten_charges(nq + ng, ng, theta, c), f, n).value;
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
  }
  out.push_back(
      bounded("phase", "theta-periodicity of the full dyon phase", worst,
              1e-12));

  worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const int nq = rng.uniform_int(-5, 5), ng = rng.uniform_int(-5, 5);
    const int npe = rng.uniform_int(-5, 5), npm = rng.uniform_int(-5, 5);
    const double theta = rng.uniform(-12.0, 12.0);
    const long n = rng.uniform_int(-4, 4);
    const auto fr = flux_rule_phase(nq, ng, npe, npm, theta, n, c);
    worst = std::max(
        worst, std::abs(fr.phase.value - kTwoPi * static_cast<double>(fr.big_n)));
  }
  out.push_back(bounded(
      "phase", "flux-rule phase is 2 pi N with no theta dependence", worst,
      1e-9));

  worst = 0.0;
  for (int ng = -10; ng <= 10; ++ng) {
    for (double theta : {0.1, 1.0, std::numbers::pi, 5.0}) {
      for (long n : {-3L, 1L, 7L}) {
        const double phi_m = 0.37 * c.phi_m0;
        const double a = theta_phase(n, ng, phi_m, theta, c).value;
        const double b =
            theta_phase_from_g(n, ng * c.g0, phi_m, theta, c).value;
        worst = std::max(worst, std::abs(a - b));
      }
    }
  }
  out.push_back(bounded(
      "phase", "theta_phase equals theta_phase_from_g on the charge lattice",
      worst, 1e-12));
}

// --- gauge_fields -----------------------------------------------------------

PlanePath random_loop(Rng& rng, int winding) {
  // star-shaped polygon around the origin, radius wobbling in [0.8, 1.6]
  const int per_turn = 800;
  const int n = per_turn * std::abs(winding);
  const double a1 = rng.uniform(0.0, 0.25), p1 = rng.uniform(0.0, kTwoPi);
  const double a2 = rng.uniform(0.0, 0.15), p2 = rng.uniform(0.0, kTwoPi);
  std::vector<Vec2> pts;
  pts.reserve(n + 1);
  const double sign = winding >= 0 ? 1.0 : -1.0;
  for (int i = 0; i <= n; ++i) {
    const double t = sign * kTwoPi * static_cast<double>(i) / per_turn;
    const double r =
        1.2 + a1 * std::cos(2.0 * t + p1) + a2 * std::cos(5.0 * t + p2);
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  pts.back() = pts.front();
  return PlanePath(std::move(pts), true);
}

void checks_gauge(std::vector<CheckResult>& out, Rng& rng) {
  const auto c = make_constants();

  double worst = 0.0;
  for (int s = 0; s < 25; ++s) {
    const auto d = random_dyon(rng);
    const auto f = random_tube(rng);
    int w = rng.uniform_int(-3, 3);
    if (w == 0) w = 1;
    const auto loop = random_loop(rng, w);
    const auto field = [&](const Vec2& p) {
      return conjugate_momentum_field(d, f, p);
    };
    const double got =
        line_integral(field, loop, loop.length() / (1 << 20), f.radius_eps);
    const double want = w * (d.q * f.phi_m - d.g * f.phi_e);
    worst = std::max(worst, std::abs(got - want));
  }
  out.push_back(bounded(
      "gauge", "closed-loop integral equals winding times enclosed flux",
      worst, 1e-8));

  worst = 0.0;
  for (int s = 0; s < 10; ++s) {
    const double theta = rng.uniform(-6.0, 6.0);
    const auto d = witten_charges(1, 1, theta, c);
    const auto f = flux_quanta(c, 0.05);
    const auto field = [&](const Vec2& p) {
      return conjugate_momentum_field(d, f, p);
    };
    const auto loop = random_loop(rng, 1);
    const auto& pts = loop.points();
    const std::size_t cut = pts.size() / 2;
    PlanePath first(std::vector<Vec2>(pts.begin(), pts.begin() + cut + 1),
                    false);
    PlanePath second(std::vector<Vec2>(pts.begin() + cut, pts.end()), false);
    const double step = loop.length() / (1 << 14);
    const double whole = line_integral(field, loop, step, f.radius_eps);
    const double parts = line_integral(field, first, step, f.radius_eps) +
                         line_integral(field, second, step, f.radius_eps);
    worst = std::max(worst, std::abs(whole - parts));
  }
  out.push_back(
      bounded("gauge", "line integral additivity under concatenation", worst,
              1e-10));

  worst = 0.0;
  for (int s = 0; s < 40; ++s) {
    const auto d = random_dyon(rng);
    const auto f = random_tube(rng);
    // small square well away from the tube
    const double cx = rng.uniform(1.0, 3.0) * (rng.uniform() < 0.5 ? -1 : 1);
    const double cy = rng.uniform(1.0, 3.0) * (rng.uniform() < 0.5 ? -1 : 1);
    const double h = 0.2;
    std::vector<Vec2> pts;
    const int m = 64;
    auto push_side = [&](Vec2 a, Vec2 b) {
      for (int i = 0; i < m; ++i) {
        pts.push_back(a + (b - a) * (static_cast<double>(i) / m));
      }
    };
    const Vec2 p00{cx - h, cy - h}, p10{cx + h, cy - h}, p11{cx + h, cy + h},
        p01{cx - h, cy + h};
    push_side(p00, p10);
    push_side(p10, p11);
    push_side(p11, p01);
    push_side(p01, p00);
    pts.push_back(p00);
    const PlanePath square(std::move(pts), true);
    const auto field = [&](const Vec2& p) {
      return conjugate_momentum_field(d, f, p);
    };
    const double circ =
        line_integral(field, square, square.length() / (1 << 15), f.radius_eps);
    worst = std::max(worst, std::abs(circ));
  }
  out.push_back(bounded(
      "gauge", "exterior potentials are curl-free (non-enclosing circulation)",
      worst, 1e-8));
}

// --- vacua -------------------------------------------------------------------

void checks_vacua(std::vector<CheckResult>& out, Rng& rng) {
  double worst = 0.0;
  for (int m : {10, 100, 1000, 10000}) {
    const double theta = rng.uniform(-8.0, 8.0);
    worst = std::max(worst, eigenvalue_residual(build_theta_vacuum(theta, m)));
  }
  out.push_back(bounded(
      "vacua", "winding shift acts as e^{-i theta} on interior amplitudes",
      worst, 1e-12));

  worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const double theta = rng.uniform(-8.0, 8.0);
    const int m = rng.uniform_int(2, 64);
    const auto a = build_theta_vacuum(theta + kTwoPi, m);
    const auto b = build_theta_vacuum(theta, m);
    for (int n = -m; n <= m; ++n) {
      worst = std::max(worst,
                       std::abs(a.state.amplitude(n) - b.state.amplitude(n)));
    }
  }
  out.push_back(
      bounded("vacua", "theta-vacuum periodicity under theta -> theta + 2 pi",
              worst, 1e-12));

  worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const long n = rng.uniform_int(-50, 50);
    const double theta = rng.uniform(-8.0, 8.0);
    const double phi = rng.uniform(-20.0, 20.0);
    worst = std::max(worst, std::abs(dyon_state_factor(n, theta, phi + kTwoPi) -
                                     dyon_state_factor(n + 1, theta, phi)));
  }
  out.push_back(bounded(
      "vacua", "state factor reindexing under phi -> phi + 2 pi", worst,
      1e-12));
}

// --- dynamics ----------------------------------------------------------------

void checks_dynamics(std::vector<CheckResult>& out, Rng& rng, bool slow) {
  // plaquette circulations on a small tube grid with an off-lattice alpha
  {
    const DyonCharge d{1.0, 0.0, {}};
    const double alpha = rng.uniform(0.1, 0.9);
    const FluxTube f = make_flux_tube(kTwoPi * alpha, 0.0, 1.0);
    const Grid2D g = Grid2D::with_tube(48, 48, 1.0, {23.5, 23.5}, 1.0);
    const LinkField links = build_link_phases(g, d, f);
    double worst_away = 0.0, worst_tube = 0.0;
    for (int j = 0; j + 1 < g.ny(); ++j) {
      for (int i = 0; i + 1 < g.nx(); ++i) {
        const double circ = plaquette_circulation(g, links, i, j);
        if (i == 23 && j == 23) {
          worst_tube = std::abs(circ - kTwoPi * links.alpha_eff);
        } else {
          worst_away = std::max(worst_away, std::abs(circ));
        }
      }
    }
    out.push_back(bounded("dynamics", "plaquette circulation vanishes off the tube",
                          worst_away, 1e-10));
    out.push_back(bounded(
        "dynamics", "tube plaquette circulation equals 2 pi alpha_eff",
        worst_tube, 1e-10));
  }

  auto packet_grid = [] {
    return std::make_shared<const Grid2D>(
        Grid2D::with_tube(48, 48, 1.0, {23.5, 23.5}, 1.0));
  };

  // gauge covariance
  {
    auto gp = packet_grid();
    const DyonCharge d{1.0, 0.0, {}};
    const FluxTube f = make_flux_tube(kTwoPi * 0.37, 0.0, 1.0);
    EvolveConfig cfg;
    cfg.dt = 0.5;
    cfg.steps = 15;
    cfg.links = build_link_phases(*gp, d, f);
    WaveField psi = WaveField::gaussian_packet(gp, {12.0, 12.0}, 4.0, {0.4, 0.4});
    WaveField psi_t = psi;
    LinkField links_t = cfg.links;
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
    out.push_back(bounded(
        "dynamics", "gauge covariance of the evolved probability density",
        worst, 1e-10));
  }

  // unitarity and serial/parallel agreement
  {
    auto gp = packet_grid();
    const DyonCharge d{1.0, 0.0, {}};
    const FluxTube f = make_flux_tube(kTwoPi * 0.5, 0.0, 1.0);
    EvolveConfig cfg;
    cfg.dt = 0.5;
    cfg.steps = 40;
    cfg.links = build_link_phases(*gp, d, f);
    const WaveField psi =
        WaveField::gaussian_packet(gp, {12.0, 34.0}, 4.0, {0.5, -0.3});
    EvolveStats stats{};
    cfg.policy = ExecPolicy::parallel;
    const WaveField a = evolve(psi, cfg, &stats);
    out.push_back(bounded("dynamics", "norm conservation per step (no absorbers)",
                          stats.max_norm_drift_per_step, 1e-10));
    cfg.policy = ExecPolicy::serial;
    const WaveField b = evolve(psi, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
      worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    out.push_back(bounded(
        "dynamics", "serial and parallel kernels agree on the final field",
        worst, 1e-13));
  }

  if (slow) {
    const auto setup = two_path_compact_setup();
    const DyonCharge d{1.0, 0.0, {}};
    const double alpha = 0.3;
    const auto run = [&](double a_eff) {
      const FluxTube f = make_flux_tube(kTwoPi * a_eff, 0.0, 1.0);
      return two_path_phase(setup.grid, d, f, setup.cfg, setup.geom)
          .overlap_phase;
    };
    const double p0 = run(alpha);
    const double p1 = run(alpha + 1.0);
    out.push_back(
        bounded("dynamics", "two-path phase is 2 pi periodic in alpha_eff",
                circular_distance(p0, p1), 1e-2));
  }
}

// --- scattering ---------------------------------------------------------------

void checks_scattering(std::vector<CheckResult>& out, Rng& rng) {
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const double theta = rng.uniform(-8.0, 8.0);
    const double k = rng.uniform(0.2, 4.0);
    const double phi = rng.uniform(0.3, kTwoPi - 0.3);
    worst = std::max(worst, std::abs(theta_cross_section(theta, k, phi) -
                                     theta_cross_section(theta + kTwoPi, k, phi)));
  }
  out.push_back(
      bounded("scattering", "closed form is 2 pi periodic in theta", worst,
              1e-12));

  worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const double theta = rng.uniform(-8.0, 8.0);
    const double k = rng.uniform(0.2, 4.0);
    const double phi = rng.uniform(0.3, kTwoPi - 0.3);
    worst = std::max(worst, std::abs(theta_cross_section(theta, k, phi) * k -
                                     theta_cross_section(theta, 1.0, phi)));
  }
  out.push_back(bounded("scattering", "cross section scales as 1/k", worst,
                        1e-12));

  worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const double theta = rng.uniform(-8.0, 8.0);
    const double k = rng.uniform(0.2, 4.0);
    const double phi = rng.uniform(0.3, std::numbers::pi);
    worst = std::max(worst, std::abs(theta_cross_section(theta, k, phi) -
                                     theta_cross_section(theta, k, kTwoPi - phi)));
  }
  out.push_back(bounded("scattering", "reflection symmetry about phi = pi",
                        worst, 1e-12));

  worst = 0.0;
  for (int ai = 1; ai <= 9; ++ai) {
    const double alpha = 0.1 * ai;
    std::vector<double> phis;
    for (int p = 0; p <= 10; ++p) {
      phis.push_back(std::numbers::pi / 6.0 +
                     (std::numbers::pi - std::numbers::pi / 6.0) * p / 10.0);
    }
    const auto oracle = partial_wave_profile(alpha, 1.0, phis);
    for (std::size_t p = 0; p < phis.size(); ++p) {
      const double closed = ab_cross_section(alpha, 1.0, phis[p]);
      worst = std::max(worst, std::abs(oracle[p].value - closed) / closed);
    }
  }
  out.push_back(bounded(
      "scattering", "partial-wave oracle matches the closed form (relative)",
      worst, 1e-3));
}

}  // namespace

std::vector<CheckResult> run_checks(const std::string& suite,
                                    std::uint64_t seed) {
  const bool all = suite == "all";
  const bool fast = suite == "fast";
  if (!all && !fast && suite != "units" && suite != "phase" &&
      suite != "gauge" && suite != "vacua" && suite != "dynamics" &&
      suite != "scattering") {
    throw std::invalid_argument("run_checks: unknown suite '" + suite + "'");
  }
  std::vector<CheckResult> out;
  Rng rng(seed);
  if (all || fast || suite == "units") checks_units(out, rng);
  if (all || fast || suite == "phase") checks_phase(out, rng);
  if (all || fast || suite == "gauge") checks_gauge(out, rng);
  if (all || fast || suite == "vacua") checks_vacua(out, rng);
  if (all || fast || suite == "dynamics")
    checks_dynamics(out, rng, /*slow=*/!fast);
  if (all || fast || suite == "scattering") checks_scattering(out, rng);
  return out;
}

}  // namespace dyonlab
