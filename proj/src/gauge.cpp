#include "dyonlab/gauge.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace dyonlab {

namespace {

// Distance from the origin to the segment [a, b].
double segment_distance_to_origin(const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) return a.r();
  double t = -(a.dot(ab)) / len2;
  t = std::min(1.0, std::max(0.0, t));
  return (a + ab * t).r();
}

}  // namespace

PlanePath::PlanePath(std::vector<Vec2> points, bool closed)
    : points_(std::move(points)), closed_(closed) {
  if (points_.size() < 2) {
    throw std::invalid_argument("PlanePath: need at least two points");
  }
  azimuths_.reserve(points_.size());
  length_ = 0.0;
  double phi = std::atan2(points_.front().y, points_.front().x);
  azimuths_.push_back(phi);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double raw = std::atan2(points_[i].y, points_[i].x);
    // unwrap: pick the branch closest to the running azimuth
    double jump = raw - std::fmod(phi, kTwoPi);
    jump -= kTwoPi * std::round(jump / kTwoPi);
    if (std::abs(jump) >= std::numbers::pi - 1e-12) {
      throw std::invalid_argument(
          "PlanePath: azimuth jump >= pi between consecutive points; sample "
          "the path more finely");
    }
    phi += jump;
    azimuths_.push_back(phi);
    length_ += (points_[i] - points_[i - 1]).r();
  }
  if (closed_) {
    const double scale = std::max(1.0, points_.front().r());
    const Vec2 gap = points_.back() - points_.front();
    if (gap.r() > 1e-12 * scale) {
      throw std::invalid_argument(
          "PlanePath: closed path must end at its first point");
    }
  }
}

PlanePath PlanePath::circle(double radius, int turns, int samples_per_turn,
                            Vec2 center) {
  const int n = std::abs(turns) * samples_per_turn;
  std::vector<Vec2> pts;
  pts.reserve(n + 1);
  const double sign = turns >= 0 ? 1.0 : -1.0;
  for (int i = 0; i <= n; ++i) {
    const double a = sign * kTwoPi * static_cast<double>(i) / samples_per_turn;
    pts.push_back({center.x + radius * std::cos(a),
                   center.y + radius * std::sin(a)});
  }
  // exact closure
  pts.back() = pts.front();
  return PlanePath(std::move(pts), true);
}

PotentialPair vector_potentials(const FluxTube& f, const Vec2& p) {
  const double r = p.r();
  if (r < f.radius_eps) {
    throw std::domain_error(
        "vector_potentials: point inside the tube (r = " + std::to_string(r) +
        " < radius_eps = " + std::to_string(f.radius_eps) +
        "); only the exterior solution is modelled");
  }
  const Vec2 phi_hat{-p.y / r, p.x / r};
  return PotentialPair{phi_hat * (f.phi_m / (kTwoPi * r)),
                       phi_hat * (-f.phi_e / (kTwoPi * r))};
}

Vec2 conjugate_momentum_field(const DyonCharge& d, const FluxTube& f,
                              const Vec2& p) {
  const auto [A, C] = vector_potentials(f, p);
  return A * d.q + C * d.g;
}

double line_integral(const VectorField& field, const PlanePath& path,
                     double step, double guard_radius) {
  if (step <= 0.0) {
    step = path.length() / 1024.0;
  }
  double total = 0.0;
  const auto& pts = path.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 a = pts[i];
    const Vec2 seg = pts[i + 1] - a;
    const double len = seg.r();
    if (len == 0.0) continue;
    if (guard_radius > 0.0 &&
        segment_distance_to_origin(a, pts[i + 1]) < guard_radius) {
      throw std::domain_error("line_integral: path enters the tube region");
    }
    const int nsub = std::max(1, static_cast<int>(std::ceil(len / step)));
    const Vec2 d = seg * (1.0 / nsub);
    double acc = 0.0;
    for (int j = 0; j < nsub; ++j) {
      const Vec2 mid = a + seg * ((j + 0.5) / nsub);
      acc += field(mid).dot(d);
    }
    total += acc;
  }
  return total;
}

long winding_number(const PlanePath& path) {
  if (!path.closed()) {
    throw std::invalid_argument("winding_number: path is not closed");
  }
  const double turns = path.total_azimuth_change() / kTwoPi;
  const double n = std::round(turns);
  if (std::abs(turns - n) > 0.25) {
    throw std::invalid_argument(
        "winding_number: azimuth change is not an integer number of turns");
  }
  return static_cast<long>(n);
}

}  // namespace dyonlab
