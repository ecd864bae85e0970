#include "dyonlab/two_path.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace dyonlab {

namespace {

using Cplx = std::complex<double>;

// wave vector whose lattice group velocity equals v (fixed point on the
// dispersion correction, which is a few percent at most)
Vec2 invert_group_velocity(Vec2 v, double dx, double mass, double dt) {
  Vec2 k{v.x * mass, v.y * mass};
  for (int it = 0; it < 30; ++it) {
    const Vec2 vg = lattice_group_velocity(k, dx, mass, dt);
    const double ex = (1.0 - std::cos(k.x * dx)) / (mass * dx * dx);
    const double ey = (1.0 - std::cos(k.y * dx)) / (mass * dx * dx);
    const double sx = v.x * mass * dx * (1.0 + 0.0625 * dt * dt * ex * ex);
    const double sy = v.y * mass * dx * (1.0 + 0.25 * dt * dt * ey * ey);
    if (std::abs(sx) >= 1.0 || std::abs(sy) >= 1.0) {
      throw std::invalid_argument(
          "two_path_phase: requested speed exceeds the lattice band");
    }
    k = {std::asin(sx) / dx, std::asin(sy) / dx};
    if (std::abs(vg.x - v.x) + std::abs(vg.y - v.y) < 1e-14) break;
  }
  return k;
}

double gaussian_weight_on_excluded(const Grid2D& g, Vec2 center, double sigma) {
  double excluded = 0.0, total = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const Vec2 d = g.node(i, j) - center;
      const double w = std::exp(-d.dot(d) / (2.0 * sigma * sigma));
      total += w;
      if (!g.active(i, j)) excluded += w;
    }
  }
  return total > 0.0 ? excluded / total : 0.0;
}

double to_principal(double phase) {
  double p = std::fmod(phase, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return p;
}

// The packets stand in for the two branches of one wave emitted at the
// on-axis source point s0, so each carries the incoming Wilson-line phase
// int (qA + gC) . dl from s0 to its position. Along a straight segment of
// the azimuthal exterior field that integral is alpha_eff times the signed
// angle swept about the tube, exact to round-off. Without this phase the
// trajectory loop would stay open between the two launch points.
void dress_with_source_line(WaveField& psi, Vec2 source, Vec2 tube,
                            double alpha_eff) {
  if (alpha_eff == 0.0) return;
  const Grid2D& g = psi.grid();
  const Vec2 s = source - tube;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.active(i, j)) continue;
      const Vec2 r = g.node(i, j) - tube;
      const double swept = std::atan2(s.x * r.y - s.y * r.x,
                                      s.x * r.x + s.y * r.y);
      psi.at(i, j) *= std::polar(1.0, alpha_eff * swept);
    }
  }
}

}  // namespace

TwoPathResult two_path_phase(const Grid2D& grid, const DyonCharge& d,
                             const FluxTube& f, const EvolveConfig& cfg_in,
                             const TwoPathGeometry& geom) {
  const Vec2 tc = grid.tube_center();
  const double dx = grid.dx();
  if (!(geom.detector_y > tc.y && tc.y > geom.source_y)) {
    throw std::invalid_argument(
        "two_path_phase: need source_y < tube_y < detector_y");
  }
  // the estimators pair node i with node nx-1-i, so the tube must sit on the
  // grid's vertical mirror axis
  if (std::abs(tc.x - 0.5 * (grid.nx() - 1) * dx) > 1e-9 * dx) {
    throw std::invalid_argument(
        "two_path_phase: tube must be centered horizontally on the grid");
  }

  EvolveConfig cfg = cfg_in;
  cfg.links = build_link_phases(grid, d, f);
  const double alpha_eff = effective_alpha(d, f);

  // aim a straight group-velocity line from the source past the tube at the
  // requested clearance, meeting the axis at detector_y
  const double rise = geom.detector_y - geom.source_y;
  const double x_off = geom.clearance * rise / (geom.detector_y - tc.y);
  const Vec2 start_l{tc.x - x_off, geom.source_y};
  const Vec2 start_r{tc.x + x_off, geom.source_y};
  const double path_len = std::hypot(x_off, rise);
  const Vec2 v{geom.speed * x_off / path_len, geom.speed * rise / path_len};
  const Vec2 k_l = invert_group_velocity(v, dx, cfg.mass, cfg.dt);
  const Vec2 k_r{-k_l.x, k_l.y};
  cfg.steps = static_cast<int>(std::lround(path_len / geom.speed / cfg.dt));

  auto gp = std::make_shared<const Grid2D>(grid);
  if (gaussian_weight_on_excluded(grid, start_l, geom.sigma) >
          geom.tube_prob_limit ||
      gaussian_weight_on_excluded(grid, start_r, geom.sigma) >
          geom.tube_prob_limit) {
    throw std::runtime_error(
        "two_path_phase: invalid run, initial packet overlaps the tube");
  }
  WaveField psi_l0 = WaveField::gaussian_packet(gp, start_l, geom.sigma, k_l);
  WaveField psi_r0 = WaveField::gaussian_packet(gp, start_r, geom.sigma, k_r);
  const Vec2 source{tc.x, geom.source_y};
  dress_with_source_line(psi_l0, source, tc, alpha_eff);
  dress_with_source_line(psi_r0, source, tc, alpha_eff);

  const int nx = grid.nx(), ny = grid.ny();
  const int j_lo = static_cast<int>(std::ceil((tc.y + geom.window_margin) / dx));
  if (j_lo >= ny - 1) {
    throw std::invalid_argument("two_path_phase: detector window off the grid");
  }

  EvolveStats stats_l{}, stats_r{};
  const WaveField psi_l = evolve(psi_l0, cfg, &stats_l);
  const WaveField psi_r = evolve(psi_r0, cfg, &stats_r);

  TwoPathResult res;
  res.alpha_eff = alpha_eff;
  res.predicted = to_principal(kTwoPi * alpha_eff);
  res.steps = cfg.steps;
  res.max_tube_ring_prob =
      std::max(stats_l.max_tube_ring_prob, stats_r.max_tube_ring_prob);
  if (res.max_tube_ring_prob > geom.tube_prob_limit) {
    throw std::runtime_error(
        "two_path_phase: invalid run, packet probability " +
        std::to_string(res.max_tube_ring_prob) +
        " reached the tube's contact ring");
  }

  // matched overlap: pair psi_R at the mirror node so the crossing carriers
  // line up; at alpha_eff = 0 the mirror symmetry makes the sum real positive
  Cplx z{0.0, 0.0};
  double wl = 0.0, wr = 0.0;
  for (int j = j_lo; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Cplx a = psi_l.at(i, j);
      const Cplx b = psi_r.at(nx - 1 - i, j);
      z += std::conj(a) * b;
      wl += std::norm(a);
      wr += std::norm(psi_r.at(i, j));
    }
  }
  const double denom = std::sqrt(wl * wr);
  res.overlap_magnitude = denom > 0.0 ? std::abs(z) / denom : 0.0;
  if (res.overlap_magnitude < 0.05) {
    throw std::runtime_error(
        "two_path_phase: invalid run, packets failed to meet in the detector "
        "window (matched overlap " +
        std::to_string(res.overlap_magnitude) + ")");
  }
  res.overlap_phase = to_principal(std::arg(z));

  // fringe cross-check: transverse intensity profile of the superposition,
  // phase read off at the fitted fringe frequency near 2 k_x
  std::vector<double> intensity(nx, 0.0);
  for (int j = j_lo; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      intensity[i] += std::norm(psi_l.at(i, j) + psi_r.at(i, j));
    }
  }
  const double q0 = 2.0 * std::abs(k_l.x);
  double best_mag = -1.0;
  Cplx best_g{0.0, 0.0};
  for (int s = 0; s <= 400; ++s) {
    const double q = q0 * (0.6 + 0.8 * s / 400.0);
    Cplx gsum{0.0, 0.0};
    for (int i = 0; i < nx; ++i) {
      const double u = i * dx - tc.x;
      gsum += intensity[i] * std::polar(1.0, -q * u);
    }
    if (std::abs(gsum) > best_mag) {
      best_mag = std::abs(gsum);
      best_g = gsum;
    }
  }
  res.fringe_phase = to_principal(-std::arg(best_g));
  return res;
}

// Clearance sits at ~4.6 sigma of the packet width while passing the tube:
// the Gaussian tail reaching the tube ring then stays below the 1e-6 guard.
TwoPathSetup two_path_reference_setup() {
  TwoPathSetup s{Grid2D::with_tube(512, 512, 1.0, {255.5, 255.5}, 1.0),
                 EvolveConfig{}, TwoPathGeometry{}};
  s.cfg.mass = 1.0;
  s.cfg.dt = 1.0;
  s.cfg.absorb_margin = 40;
  s.geom.sigma = 10.0;
  s.geom.source_y = 140.0;
  s.geom.detector_y = 430.0;
  s.geom.clearance = 78.0;
  s.geom.speed = 0.85;
  s.geom.window_margin = 40.0;
  return s;
}

TwoPathSetup two_path_compact_setup() {
  TwoPathSetup s{Grid2D::with_tube(320, 256, 1.0, {159.5, 127.5}, 1.0),
                 EvolveConfig{}, TwoPathGeometry{}};
  s.cfg.mass = 1.0;
  s.cfg.dt = 1.0;
  s.cfg.absorb_margin = 20;
  s.geom.sigma = 7.0;
  s.geom.source_y = 70.0;
  s.geom.detector_y = 214.0;
  s.geom.clearance = 52.0;
  s.geom.speed = 0.85;
  s.geom.window_margin = 24.0;
  return s;
}

}  // namespace dyonlab
