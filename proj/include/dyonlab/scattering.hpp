#pragma once

#include <span>
#include <vector>

// Differential cross section of a dyon on a dual flux line. The closed form
// sin^2(pi alpha)/(2 pi k sin^2(phi/2)) is checked against an independent
// partial-wave sum with phase shifts delta_m = (pi/2)(|m| - |m - alpha|),
// summed under Abel or Cesaro regularization (the raw series is only
// conditionally convergent).

namespace dyonlab {

inline constexpr double kForwardCutoff = 1e-3;  // rad, around phi = 0 mod 2pi

// dsigma_theta/dOmega = sin^2(theta/2) / (2 pi k sin^2(phi/2))
double theta_cross_section(double theta, double k, double phi,
                           double forward_cutoff = kForwardCutoff);

// same law through the dimensionless flux alpha_eff = theta / (2 pi)
double ab_cross_section(double alpha_eff, double k, double phi,
                        double forward_cutoff = kForwardCutoff);

enum class Regularization { abel, cesaro };

struct PartialWaveResult {
  double value = 0.0;          // |f(phi)|^2
  double alpha_reduced = 0.0;  // alpha mod 1 entering the phase shifts
  long alpha_integer = 0;      // trivial (non-scattering) part
  double tail_estimate = 0.0;  // absolute bound on the regularization residual
};

PartialWaveResult partial_wave_cross_section(
    double alpha_eff, double k, double phi, int m_max = 2000,
    Regularization reg = Regularization::abel,
    double forward_cutoff = kForwardCutoff);

enum class AnglePolicy { serial, parallel };

// Cross sections over an angle grid; the parallel flavour distributes angles
// over threads and is required to match the serial one bit for bit.
std::vector<PartialWaveResult> partial_wave_profile(
    double alpha_eff, double k, std::span<const double> phis, int m_max = 2000,
    Regularization reg = Regularization::abel,
    AnglePolicy policy = AnglePolicy::parallel,
    double forward_cutoff = kForwardCutoff);

}  // namespace dyonlab
