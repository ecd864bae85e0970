#pragma once

#include <vector>

// Two-slit pattern with a relative slit phase delta_0 + theta, propagated by
// scalar diffraction to the far screen. The pattern shifts by
// (L lambda / d)(delta0_bar + theta/(2 pi)), one fringe period per 2 pi.

namespace dyonlab {

struct SlitGeometry {
  double screen_distance;  // L, first to second screen
  double slit_separation;  // d, slit centre to slit centre
  double slit_width;       // w
  double wavelength;       // lambda (de Broglie)
  double delta0_bar = 0.0; // geometric phase offset delta_0 / (2 pi)
};

struct FringePattern {
  std::vector<double> x;          // screen positions
  std::vector<double> intensity;  // |amplitude|^2, unnormalized
  double delta_x;      // measured shift, principal value in (-P/2, P/2]
  double period;       // fringe period P = L lambda / d
  double phase;        // measured slit phase mod 2 pi (= 2 pi delta_x / P)
};

// Throws std::domain_error unless L >= 20 d and the slits are sane.
FringePattern fringe_shift(const SlitGeometry& geom, double theta,
                           int screen_samples = 2048);

// Distance between two shifts identified modulo the fringe period.
double fringe_distance(double a, double b, double period);

}  // namespace dyonlab
