#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "dyonlab/charges.hpp"

// Closed-form topological phases of a dyon encircling a dual flux tube:
// the dyon phase n(q phi_m - g phi_e), its split into a standard part and a
// theta part, the quantised flux-rule value, and the heuristic string phase.

namespace dyonlab {

// A phase carried unreduced (winding information matters) together with its
// representative in [0, 2 pi).
struct PhaseResult {
  double value;    // radians, unreduced
  double reduced;  // value mod 2 pi, in [0, 2 pi)
  long winding_n;  // value = reduced + 2 pi winding_n

  static PhaseResult of(double value) {
    double w = std::floor(value / kTwoPi);
    double reduced = value - kTwoPi * w;
    if (reduced >= kTwoPi) {  // round-off at the seam
      reduced -= kTwoPi;
      w += 1.0;
    }
    if (reduced < 0.0) {
      reduced += kTwoPi;
      w -= 1.0;
    }
    return PhaseResult{value, reduced, static_cast<long>(w)};
  }
};

// Distance between phases as points on the circle.
inline double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

// delta_D = n (q phi_m - g phi_e), the phase per n windings.
inline PhaseResult dyon_phase(const DyonCharge& d, const FluxTube& f, long n) {
  return PhaseResult::of(static_cast<double>(n) * (d.q * f.phi_m - d.g * f.phi_e));
}

// Dimensionless flux parameter seen by the dyon:
// alpha_eff = (q phi_m - g phi_e) / (2 pi) = delta_D / (2 pi n).
inline double effective_alpha(const DyonCharge& d, const FluxTube& f) {
  return (d.q * f.phi_m - d.g * f.phi_e) / kTwoPi;
}

struct SplitPhase {
  PhaseResult standard;    // n (n_q e phi_m - n_g g0 phi_e)
  PhaseResult theta_part;  // n n_g theta e phi_m / (2 pi)
};

// Witten-effect split of the dyon phase; the two parts recombine to
// dyon_phase(witten_charges(n_q, n_g, theta), f, n).
inline SplitPhase dyon_phase_split(int n_q, int n_g, double theta,
                                   const FluxTube& f, long n,
                                   const PhysicalConstants& c) {
  const double nn = static_cast<double>(n);
  const double standard = nn * (n_q * c.e * f.phi_m - n_g * c.g0 * f.phi_e);
  const double theta_part = nn * n_g * theta * c.e * f.phi_m / kTwoPi;
  return SplitPhase{PhaseResult::of(standard), PhaseResult::of(theta_part)};
}

// delta_theta = n n_g theta e phi_m / (2 pi).
inline PhaseResult theta_phase(long n, int n_g, double phi_m, double theta,
                               const PhysicalConstants& c) {
  return PhaseResult::of(static_cast<double>(n) * n_g * theta * c.e * phi_m / kTwoPi);
}

// Same phase written through the magnetic charge:
// delta_theta = n alpha theta g phi_m / pi; equals theta_phase when g = n_g g0.
inline PhaseResult theta_phase_from_g(long n, double g, double phi_m,
                                      double theta, const PhysicalConstants& c) {
  return PhaseResult::of(static_cast<double>(n) * c.alpha * theta * g * phi_m /
                         std::numbers::pi);
}

struct FluxRulePhase {
  PhaseResult phase;  // composed through witten_charges + flux_from_integers
  long big_n;         // N = n (n_q n_phi_m - n_g n_phi_e); phase = 2 pi N
};

// When the fluxes follow the hypothetical quantisation rules the dyon phase
// is trivial: theta cancels between charges and fluxes and delta_D = 2 pi N.
inline FluxRulePhase flux_rule_phase(int n_q, int n_g, int n_phi_e, int n_phi_m,
                                     double theta, long n,
                                     const PhysicalConstants& c) {
  const DyonCharge d = witten_charges(n_q, n_g, theta, c);
  const FluxTube f = flux_from_integers(n_phi_e, n_phi_m, theta, 1e-6, c);
  const long big_n =
      n * (static_cast<long>(n_q) * n_phi_m - static_cast<long>(n_g) * n_phi_e);
  return FluxRulePhase{dyon_phase(d, f, n), big_n};
}

struct StringPhase {
  PhaseResult phase;           // 4 pi (q1 g2 - q2 g1)
  std::optional<long> big_n;   // integer N when phase = 2 pi N; nullopt flags
                               // a Schwinger-Zwanziger violation
};

// Heuristic phase of a dyon encircling the semi-infinite string attached to
// another dyon. Requiring triviality reproduces the SZ condition, but the
// argument rests on a string that is neither globally gauged, force-free,
// nor homotopic to the infinite tube; treat the result as a calculator, not
// a derivation.
inline StringPhase heuristic_string_phase(const DyonCharge& d1,
                                          const DyonCharge& d2,
                                          double tol = 1e-9) {
  const double value = 2.0 * kTwoPi * sz_pairing(d1, d2);
  const double n = std::round(value / kTwoPi);
  std::optional<long> big_n;
  if (std::abs(value - kTwoPi * n) <= tol) {
    big_n = static_cast<long>(n);
  }
  return StringPhase{PhaseResult::of(value), big_n};
}

}  // namespace dyonlab
