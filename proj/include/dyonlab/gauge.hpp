#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "dyonlab/charges.hpp"

// Exterior gauge potentials of the dual flux tube and line integrals along
// plane paths. The potentials are pure gradients of multi-valued functions of
// the azimuth, so closed-loop integrals measure winding times enclosed flux.
// The tube sits at the origin; only the region r >= radius_eps is modelled.

namespace dyonlab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double r() const { return std::hypot(x, y); }

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
};

using PlanePoint = Vec2;

// Ordered plane points with the azimuth about the origin unwrapped along the
// path (branch-tracked, not principal-value). Sampling must be fine enough
// that consecutive azimuth jumps stay below pi, otherwise winding aliases.
class PlanePath {
 public:
  // closed = true requires first point == last point (within 1e-12 of scale).
  PlanePath(std::vector<Vec2> points, bool closed);

  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<double>& azimuths() const { return azimuths_; }
  bool closed() const { return closed_; }
  double length() const { return length_; }

  // Total unwrapped azimuth change from first to last point.
  double total_azimuth_change() const {
    return azimuths_.back() - azimuths_.front();
  }

  // Circle of given radius and turns (negative = clockwise), as a sampled
  // polygon; convenience for tests and the CLI.
  static PlanePath circle(double radius, int turns, int samples_per_turn = 720,
                          Vec2 center = {0.0, 0.0});

 private:
  std::vector<Vec2> points_;
  std::vector<double> azimuths_;
  bool closed_;
  double length_;
};

// A = grad chi with chi = phi * phi_m / (2 pi), C = grad xi with
// xi = -phi * phi_e / (2 pi). Both are azimuthal 1/r fields outside the tube.
struct PotentialPair {
  Vec2 A;
  Vec2 C;
};

PotentialPair vector_potentials(const FluxTube& f, const Vec2& p);

// q A + g C; in the CP-violating vacuum configuration this equals grad beta
// with beta = theta phi / (2 pi).
Vec2 conjugate_momentum_field(const DyonCharge& d, const FluxTube& f,
                              const Vec2& p);

using VectorField = std::function<Vec2(const Vec2&)>;

// Composite midpoint quadrature of field . dl along the path, subdividing
// each segment to the requested step. step <= 0 selects the default
// length/1024. Throws std::domain_error if any segment enters r < radius_eps
// of the guard tube (pass radius 0 to disable the guard).
double line_integral(const VectorField& field, const PlanePath& path,
                     double step = 0.0, double guard_radius = 0.0);

// round(total azimuth change / 2 pi) for a closed path about the origin.
long winding_number(const PlanePath& path);

}  // namespace dyonlab
