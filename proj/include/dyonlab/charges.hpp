#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

// Charge lattice and flux construction for a dyon outside a dual flux tube.
//
// Natural units hbar = c = 1, Gaussian-style alpha = e^2. In these units
// e*g0 = 1/2 and the flux quanta obey e*phi_m0 = g0*phi_e0 = 2*pi, so every
// phase downstream is a pure number of radians.

namespace dyonlab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA fine-structure constant, the library-wide default.
inline constexpr double kDefaultAlpha = 1.0 / 137.035999084;

struct PhysicalConstants {
  double alpha;   // fine-structure constant
  double e;       // electric charge quantum, sqrt(alpha)
  double g0;      // magnetic charge quantum, e/(2 alpha)
  double phi_m0;  // magnetic flux quantum, 2 pi / e
  double phi_e0;  // electric flux quantum, 2 pi / g0
};

inline PhysicalConstants make_constants(double alpha = kDefaultAlpha) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("make_constants: alpha must be positive");
  }
  PhysicalConstants c{};
  c.alpha = alpha;
  c.e = std::sqrt(alpha);
  c.g0 = c.e / (2.0 * alpha);
  c.phi_m0 = kTwoPi / c.e;
  c.phi_e0 = kTwoPi / c.g0;
  return c;
}

// Integer quantum numbers kept alongside the floating charges; the exact
// charge-lattice identities are checked on the integers, the dynamics uses
// the reals.
struct ChargeProvenance {
  int n_q;
  int n_g;
  double theta;
};

struct DyonCharge {
  double q;
  double g;
  std::optional<ChargeProvenance> from;
};

// q = n_q e + n_g e theta / (2 pi),  g = n_g g0.
inline DyonCharge witten_charges(int n_q, int n_g, double theta,
                                 const PhysicalConstants& c) {
  DyonCharge d{};
  d.q = n_q * c.e + n_g * c.e * theta / kTwoPi;
  d.g = n_g * c.g0;
  d.from = ChargeProvenance{n_q, n_g, theta};
  return d;
}

// q1 g2 - q2 g1; equals N/2 for any pair on the charge lattice.
inline double sz_pairing(const DyonCharge& d1, const DyonCharge& d2) {
  return d1.q * d2.g - d2.q * d1.g;
}

// Detects the integer N with q1 g2 - q2 g1 = N/2; nullopt when the pairing
// is off the lattice (a violation report, not an error).
inline std::optional<long> sz_check(const DyonCharge& d1, const DyonCharge& d2,
                                    double tol = 1e-9) {
  const double two_v = 2.0 * sz_pairing(d1, d2);
  const double n = std::round(two_v);
  if (std::abs(two_v - n) <= tol) {
    return static_cast<long>(n);
  }
  return std::nullopt;
}

struct FluxProvenance {
  int n_phi_e;
  int n_phi_m;
  double theta;
};

struct FluxTube {
  double phi_m;
  double phi_e;
  double radius_eps;  // exclusion radius, grid units; fields are exterior-only
  std::optional<FluxProvenance> from;
};

inline FluxTube make_flux_tube(double phi_m, double phi_e,
                               double radius_eps = 1e-6) {
  if (!(radius_eps > 0.0)) {
    throw std::domain_error("make_flux_tube: radius_eps must be positive");
  }
  return FluxTube{phi_m, phi_e, radius_eps, std::nullopt};
}

// Hypothetical flux quantisation mirroring the charge rules:
// phi_e = n_phi_e phi_e0 + n_phi_m phi_e0 theta/(2 pi),  phi_m = n_phi_m phi_m0.
inline FluxTube flux_from_integers(int n_phi_e, int n_phi_m, double theta,
                                   double radius_eps,
                                   const PhysicalConstants& c) {
  if (!(radius_eps > 0.0)) {
    throw std::domain_error("flux_from_integers: radius_eps must be positive");
  }
  FluxTube f{};
  f.phi_e = n_phi_e * c.phi_e0 + n_phi_m * c.phi_e0 * theta / kTwoPi;
  f.phi_m = n_phi_m * c.phi_m0;
  f.radius_eps = radius_eps;
  f.from = FluxProvenance{n_phi_e, n_phi_m, theta};
  return f;
}

// Both flux quanta through the tube; with elementary charges this is the
// configuration whose dyon phase vanishes.
inline FluxTube flux_quanta(const PhysicalConstants& c,
                            double radius_eps = 1e-6) {
  return flux_from_integers(1, 1, 0.0, radius_eps, c);
}

// SO(2) duality rotation acting on the charge and flux doublets:
//   q' =  q cos x + g sin x        phi_e' =  phi_e cos x + phi_m sin x
//   g' = -q sin x + g cos x        phi_m' = -phi_e sin x + phi_m cos x
// The combination q phi_m - g phi_e is invariant, so the dyon phase is too.
inline std::pair<DyonCharge, FluxTube> duality_rotate(const DyonCharge& d,
                                                      const FluxTube& f,
                                                      double xi) {
  const double cs = std::cos(xi);
  const double sn = std::sin(xi);
  DyonCharge dr{d.q * cs + d.g * sn, -d.q * sn + d.g * cs, std::nullopt};
  FluxTube fr{-f.phi_e * sn + f.phi_m * cs, f.phi_e * cs + f.phi_m * sn,
              f.radius_eps, std::nullopt};
  return {dr, fr};
}

}  // namespace dyonlab
