#include "dyonlab/evolve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dyonlab {

namespace {

using Cplx = std::complex<double>;

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGlX[4] = {0.1834346424956498, 0.5255324099163290,
                            0.7966664774136267, 0.9602898564975363};
constexpr double kGlW[4] = {0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

struct EdgeIntegrand {
  const DyonCharge* d;
  const FluxTube* f;  // relaxed copy, radius guard disabled
  Vec2 a;             // edge start, tube-centred coordinates
  Vec2 t;             // edge vector

  double operator()(double s) const {
    const Vec2 p = a + t * s;
    return conjugate_momentum_field(*d, *f, p).dot(t);
  }
};

double gl8(const EdgeIntegrand& fn, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int q = 0; q < 4; ++q) {
    acc += kGlW[q] * (fn(mid - half * kGlX[q]) + fn(mid + half * kGlX[q]));
  }
  return acc * half;
}

double adaptive_edge(const EdgeIntegrand& fn, double lo, double hi,
                     double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = gl8(fn, lo, mid);
  const double right = gl8(fn, mid, hi);
  const double refined = left + right;
  if (std::abs(refined - whole) <= tol || depth >= 40) {
    return refined;
  }
  return adaptive_edge(fn, lo, mid, left, 0.5 * tol, depth + 1) +
         adaptive_edge(fn, mid, hi, right, 0.5 * tol, depth + 1);
}

double edge_integral(const DyonCharge& d, const FluxTube& f, Vec2 a, Vec2 b) {
  EdgeIntegrand fn{&d, &f, a, b - a};
  return adaptive_edge(fn, 0.0, 1.0, gl8(fn, 0.0, 1.0), 1e-13, 0);
}

double segment_distance(Vec2 a, Vec2 b, Vec2 p) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::min(1.0, std::max(0.0, t));
  return (a + ab * t - p).r();
}

struct StepWorkspace {
  std::vector<Cplx> ux, uy;                  // link factors e^{i angle}
  std::vector<std::uint8_t> ex_act, ey_act;  // edge between two active nodes
  std::vector<double> absorb;                // amplitude mask, empty if off
  std::vector<Cplx> cp, dp;                  // y-sweep scratch grids
};

// Cayley half-transform along x: (I + i(tau/2)Hx) psi' = (I - i(tau/2)Hx) psi
// for one row. Thomas solve; excluded nodes are identity rows with zero rhs.
void row_solve(Cplx* psi, const Cplx* ux, const std::uint8_t* ex,
               const std::uint8_t* act, int n, Cplx ig, Cplx* cp, Cplx* rhs) {
  const Cplx b_act = 1.0 + 2.0 * ig;
  const Cplx b_act_m = 1.0 - 2.0 * ig;
  for (int i = 0; i < n; ++i) {
    if (!act[i]) {
      rhs[i] = 0.0;
      continue;
    }
    Cplx v = b_act_m * psi[i];
    if (i + 1 < n && ex[i]) v += ig * std::conj(ux[i]) * psi[i + 1];
    if (i > 0 && ex[i - 1]) v += ig * ux[i - 1] * psi[i - 1];
    rhs[i] = v;
  }
  // forward elimination
  {
    const Cplx b0 = act[0] ? b_act : Cplx{1.0, 0.0};
    const Cplx c0 = (act[0] && n > 1 && ex[0]) ? -ig * std::conj(ux[0]) : 0.0;
    cp[0] = c0 / b0;
    rhs[0] = rhs[0] / b0;
  }
  for (int i = 1; i < n; ++i) {
    const bool coupled = act[i] && ex[i - 1];
    const Cplx ai = coupled ? -ig * ux[i - 1] : Cplx{0.0, 0.0};
    const Cplx bi = act[i] ? b_act : Cplx{1.0, 0.0};
    const Cplx ci =
        (act[i] && i + 1 < n && ex[i]) ? -ig * std::conj(ux[i]) : Cplx{0.0, 0.0};
    const Cplx denom = bi - ai * cp[i - 1];
    cp[i] = ci / denom;
    rhs[i] = (rhs[i] - ai * rhs[i - 1]) / denom;
  }
  // back substitution
  psi[n - 1] = rhs[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    psi[i] = rhs[i] - cp[i] * psi[i + 1];
  }
}

void sweep_x(WaveField& f, const StepWorkspace& ws, double tau, double mass,
             ExecPolicy policy) {
  const Grid2D& g = f.grid();
  const int nx = g.nx(), ny = g.ny();
  const Cplx ig{0.0, tau / (4.0 * mass * g.dx() * g.dx())};
  Cplx* data = f.data().data();
  const auto* act = g.active_mask().data();

  if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<Cplx> cp(nx), rhs(nx);
#pragma omp for schedule(static)
      for (int j = 0; j < ny; ++j) {
        const std::size_t off = static_cast<std::size_t>(j) * nx;
        row_solve(data + off, ws.ux.data() + off, ws.ex_act.data() + off,
                  act + off, nx, ig, cp.data(), rhs.data());
      }
    }
    return;
#endif
  }
  std::vector<Cplx> cp(nx), rhs(nx);
  for (int j = 0; j < ny; ++j) {
    const std::size_t off = static_cast<std::size_t>(j) * nx;
    row_solve(data + off, ws.ux.data() + off, ws.ex_act.data() + off, act + off,
              nx, ig, cp.data(), rhs.data());
  }
}

// Same transform along y. Columns are independent; each is a tridiagonal
// solve with stride nx. Runs blocked over column ranges so that forward and
// back substitution stream row-contiguous memory.
void sweep_y_block(WaveField& f, StepWorkspace& ws, double tau, double mass,
                   int i0, int i1) {
  const Grid2D& g = f.grid();
  const int nx = g.nx(), ny = g.ny();
  const Cplx ig{0.0, tau / (4.0 * mass * g.dx() * g.dx())};
  const Cplx b_act = 1.0 + 2.0 * ig;
  const Cplx b_act_m = 1.0 - 2.0 * ig;
  Cplx* psi = f.data().data();
  const auto* act = g.active_mask().data();
  Cplx* cp = ws.cp.data();
  Cplx* dp = ws.dp.data();

  auto at = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };

  for (int j = 0; j < ny; ++j) {
    for (int i = i0; i < i1; ++i) {
      const std::size_t id = at(i, j);
      Cplx rhs;
      if (!act[id]) {
        rhs = 0.0;
      } else {
        rhs = b_act_m * psi[id];
        if (j + 1 < ny && ws.ey_act[id])
          rhs += ig * std::conj(ws.uy[id]) * psi[at(i, j + 1)];
        if (j > 0 && ws.ey_act[at(i, j - 1)])
          rhs += ig * ws.uy[at(i, j - 1)] * psi[at(i, j - 1)];
      }
      const Cplx bi = act[id] ? b_act : Cplx{1.0, 0.0};
      const Cplx ci = (act[id] && j + 1 < ny && ws.ey_act[id])
                          ? -ig * std::conj(ws.uy[id])
                          : Cplx{0.0, 0.0};
      if (j == 0) {
        cp[id] = ci / bi;
        dp[id] = rhs / bi;
      } else {
        const std::size_t up = at(i, j - 1);
        const bool coupled = act[id] && ws.ey_act[up];
        const Cplx ai = coupled ? -ig * ws.uy[up] : Cplx{0.0, 0.0};
        const Cplx denom = bi - ai * cp[up];
        cp[id] = ci / denom;
        dp[id] = (rhs - ai * dp[up]) / denom;
      }
    }
  }
  for (int i = i0; i < i1; ++i) {
    psi[at(i, ny - 1)] = dp[at(i, ny - 1)];
  }
  for (int j = ny - 2; j >= 0; --j) {
    for (int i = i0; i < i1; ++i) {
      const std::size_t id = at(i, j);
      psi[id] = dp[id] - cp[id] * psi[at(i, j + 1)];
    }
  }
}

void sweep_y(WaveField& f, StepWorkspace& ws, double tau, double mass,
             ExecPolicy policy) {
  const int nx = f.grid().nx();
  if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
    const int nthreads = omp_get_max_threads();
    const int nblocks = std::min(nx, std::max(1, nthreads));
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nblocks; ++b) {
      const int i0 = static_cast<int>(static_cast<long>(b) * nx / nblocks);
      const int i1 = static_cast<int>(static_cast<long>(b + 1) * nx / nblocks);
      sweep_y_block(f, ws, tau, mass, i0, i1);
    }
    return;
#endif
  }
  sweep_y_block(f, ws, tau, mass, 0, nx);
}

double ring_probability(const WaveField& f) {
  double p = 0.0;
  for (std::size_t id : f.grid().tube_ring()) {
    p += std::norm(f.data()[id]);
  }
  return p;
}

}  // namespace

LinkField build_link_phases(const Grid2D& grid, const DyonCharge& d,
                            const FluxTube& f) {
  const int nx = grid.nx(), ny = grid.ny();
  LinkField links;
  links.alpha_eff = effective_alpha(d, f);
  links.ax.assign(grid.size(), 0.0);
  links.ay.assign(grid.size(), 0.0);
  links.trivial = (links.alpha_eff == 0.0);
  if (links.trivial) return links;

  if (!grid.has_tube()) {
    throw std::invalid_argument(
        "build_link_phases: non-trivial coupling needs a grid with a tube");
  }
  const Vec2 c = grid.tube_center();
  // The idealized exterior potentials hold everywhere off the flux line;
  // radius_eps guards the wave function, not the field, so lift it here.
  FluxTube relaxed = f;
  relaxed.radius_eps = 1e-30;

  // reject a tube centre sitting on an edge (singular integrand)
  const int ci = static_cast<int>(std::floor(c.x / grid.dx()));
  const int cj = static_cast<int>(std::floor(c.y / grid.dx()));
  for (int j = std::max(0, cj - 1); j <= std::min(ny - 2, cj + 1); ++j) {
    for (int i = std::max(0, ci - 1); i <= std::min(nx - 2, ci + 1); ++i) {
      const Vec2 n00 = grid.node(i, j);
      const Vec2 n10 = grid.node(i + 1, j);
      const Vec2 n01 = grid.node(i, j + 1);
      if (segment_distance(n00, n10, c) < 1e-9 * grid.dx() ||
          segment_distance(n00, n01, c) < 1e-9 * grid.dx()) {
        throw std::invalid_argument(
            "build_link_phases: tube center lies on a grid edge");
      }
    }
  }

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Vec2 a = grid.node(i, j) - c;
      if (i + 1 < nx) {
        links.ax[grid.index(i, j)] =
            edge_integral(d, relaxed, a, grid.node(i + 1, j) - c);
      }
      if (j + 1 < ny) {
        links.ay[grid.index(i, j)] =
            edge_integral(d, relaxed, a, grid.node(i, j + 1) - c);
      }
    }
  }
  return links;
}

double plaquette_circulation(const Grid2D& grid, const LinkField& links, int i,
                             int j) {
  if (i < 0 || j < 0 || i + 1 >= grid.nx() || j + 1 >= grid.ny()) {
    throw std::out_of_range("plaquette_circulation: plaquette outside grid");
  }
  return links.ax[grid.index(i, j)] + links.ay[grid.index(i + 1, j)] -
         links.ax[grid.index(i, j + 1)] - links.ay[grid.index(i, j)];
}

WaveField evolve(const WaveField& field, const EvolveConfig& cfg,
                 EvolveStats* stats) {
  const Grid2D& g = field.grid();
  const int nx = g.nx(), ny = g.ny();
  if (!(cfg.dt > 0.0) || !(cfg.mass > 0.0) || cfg.steps < 0) {
    throw std::invalid_argument("evolve: need dt > 0, mass > 0, steps >= 0");
  }
  if (!cfg.links.trivial && (cfg.links.ax.size() != g.size() ||
                             cfg.links.ay.size() != g.size())) {
    throw std::invalid_argument("evolve: link field does not match the grid");
  }

  WaveField f = field;
  StepWorkspace ws;
  ws.ux.assign(g.size(), Cplx{1.0, 0.0});
  ws.uy.assign(g.size(), Cplx{1.0, 0.0});
  if (!cfg.links.trivial) {
    for (std::size_t id = 0; id < g.size(); ++id) {
      ws.ux[id] = std::polar(1.0, cfg.links.ax[id]);
      ws.uy[id] = std::polar(1.0, cfg.links.ay[id]);
    }
  }
  ws.ex_act.assign(g.size(), 0);
  ws.ey_act.assign(g.size(), 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t id = g.index(i, j);
      if (i + 1 < nx) ws.ex_act[id] = g.active(i, j) && g.active(i + 1, j);
      if (j + 1 < ny) ws.ey_act[id] = g.active(i, j) && g.active(i, j + 1);
    }
  }
  if (cfg.absorb_margin > 0) {
    const int m = cfg.absorb_margin;
    if (2 * m >= std::min(nx, ny)) {
      throw std::invalid_argument("evolve: absorb_margin too wide for grid");
    }
    auto ramp = [m](int dist) {
      if (dist >= m) return 1.0;
      const double s = std::sin(0.5 * std::numbers::pi * dist / m);
      return s * s;
    };
    ws.absorb.resize(g.size());
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int dist = std::min(std::min(i, nx - 1 - i), std::min(j, ny - 1 - j));
        ws.absorb[g.index(i, j)] = ramp(dist);
      }
    }
  }
  ws.cp.assign(g.size(), Cplx{});
  ws.dp.assign(g.size(), Cplx{});

  EvolveStats local{};
  double prev_norm2 = f.norm_squared();
  if (!g.tube_ring().empty()) {
    local.max_tube_ring_prob = ring_probability(f);
  }

  for (int step = 0; step < cfg.steps; ++step) {
    sweep_x(f, ws, 0.5 * cfg.dt, cfg.mass, cfg.policy);
    sweep_y(f, ws, cfg.dt, cfg.mass, cfg.policy);
    sweep_x(f, ws, 0.5 * cfg.dt, cfg.mass, cfg.policy);

    const double evolved_norm2 = f.norm_squared();
    const double growth = evolved_norm2 / prev_norm2 - 1.0;
    if (growth > cfg.instability_growth) {
      throw std::runtime_error(
          "evolve: instability detected at step " + std::to_string(step) +
          ": norm^2 grew by " + std::to_string(growth) + " in one step");
    }
    if (ws.absorb.empty()) {
      local.max_norm_drift_per_step =
          std::max(local.max_norm_drift_per_step, std::abs(growth));
      prev_norm2 = evolved_norm2;
    } else {
      auto& data = f.data();
      for (std::size_t id = 0; id < data.size(); ++id) data[id] *= ws.absorb[id];
      prev_norm2 = f.norm_squared();
    }
    if (!g.tube_ring().empty()) {
      local.max_tube_ring_prob =
          std::max(local.max_tube_ring_prob, ring_probability(f));
    }
    local.steps_run = step + 1;
  }
  if (stats != nullptr) *stats = local;
  return f;
}

void apply_gauge_transform(WaveField& field, LinkField& links,
                           const std::vector<double>& lambda) {
  const Grid2D& g = field.grid();
  if (lambda.size() != g.size()) {
    throw std::invalid_argument("apply_gauge_transform: lambda size mismatch");
  }
  if (links.trivial) {
    // a gauge transform makes the link field formally non-trivial
    links.ax.assign(g.size(), 0.0);
    links.ay.assign(g.size(), 0.0);
    links.trivial = false;
  }
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t id = g.index(i, j);
      field.data()[id] *= std::polar(1.0, lambda[id]);
      if (i + 1 < g.nx())
        links.ax[id] += lambda[g.index(i + 1, j)] - lambda[id];
      if (j + 1 < g.ny())
        links.ay[id] += lambda[g.index(i, j + 1)] - lambda[id];
    }
  }
}

Vec2 lattice_group_velocity(Vec2 k, double dx, double mass, double dt) {
  const double ex = (1.0 - std::cos(k.x * dx)) / (mass * dx * dx);
  const double ey = (1.0 - std::cos(k.y * dx)) / (mass * dx * dx);
  // x is applied as two Cayley half-steps per step, y as one full step
  const double denx = 1.0 + 0.25 * dt * ex * 0.25 * dt * ex;
  const double deny = 1.0 + 0.5 * dt * ey * 0.5 * dt * ey;
  return {std::sin(k.x * dx) / (mass * dx) / denx,
          std::sin(k.y * dx) / (mass * dx) / deny};
}

}  // namespace dyonlab
