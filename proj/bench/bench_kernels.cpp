// Timing comparison of the serial reference kernels against the OpenMP ones:
// Strang steps of the gauge-coupled solver and partial-wave angle profiles.

#include <chrono>
#include <cstdio>
#include <memory>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dyonlab/evolve.hpp"
#include "dyonlab/scattering.hpp"
#include "dyonlab/two_path.hpp"

using namespace dyonlab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double time_evolve(const WaveField& psi, EvolveConfig cfg, ExecPolicy policy) {
  cfg.policy = policy;
  const auto t0 = std::chrono::steady_clock::now();
  const auto out = evolve(psi, cfg);
  const double dt = seconds_since(t0);
  std::printf("    final norm^2 %.12f\n", out.norm_squared());
  return dt;
}

double time_profile(AnglePolicy policy, const std::vector<double>& phis) {
  const auto t0 = std::chrono::steady_clock::now();
  double acc = 0.0;
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto prof = partial_wave_profile(alpha, 1.0, phis, 4000,
                                           Regularization::abel, policy);
    for (const auto& r : prof) acc += r.value;
  }
  const double dt = seconds_since(t0);
  std::printf("    checksum %.9f\n", acc);
  return dt;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; parallel flavours fall back to serial\n");
#endif

  {
    std::printf("gauge-coupled Strang step, 512x512 grid, 100 steps\n");
    const auto grid = std::make_shared<const Grid2D>(
        Grid2D::with_tube(512, 512, 1.0, {255.5, 255.5}, 1.0));
    const DyonCharge d{1.0, 0.0, {}};
    const FluxTube f = make_flux_tube(kTwoPi * 0.37, 0.0, 1.0);
    EvolveConfig cfg;
    cfg.dt = 1.0;
    cfg.steps = 100;
    cfg.absorb_margin = 40;
    const auto t0 = std::chrono::steady_clock::now();
    cfg.links = build_link_phases(*grid, d, f);
    std::printf("  link-phase build: %.3f s\n", seconds_since(t0));
    const auto psi =
        WaveField::gaussian_packet(grid, {160.0, 80.0}, 10.0, {0.23, 0.82});
    const double ser = time_evolve(psi, cfg, ExecPolicy::serial);
    std::printf("  serial:   %.3f s (%.2f ms/step)\n", ser, 1e3 * ser / 100);
    const double par = time_evolve(psi, cfg, ExecPolicy::parallel);
    std::printf("  parallel: %.3f s (%.2f ms/step)  speedup %.2fx\n", par,
                1e3 * par / 100, ser / par);
  }

  {
    std::printf("partial-wave profile, 64 angles, m_max 4000, 5 alphas\n");
    std::vector<double> phis;
    for (int i = 0; i < 64; ++i) phis.push_back(0.55 + 5.1 * i / 63.0);
    const double ser = time_profile(AnglePolicy::serial, phis);
    std::printf("  serial:   %.3f s\n", ser);
    const double par = time_profile(AnglePolicy::parallel, phis);
    std::printf("  parallel: %.3f s  speedup %.2fx\n", par, ser / par);
  }
  return 0;
}
