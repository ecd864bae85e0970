#include "dyonlab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace dyonlab {

namespace {

bool smooth_size(int n) {
  if (n < 8) return false;
  for (int p : {2, 3, 5, 7}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

void validate_dims(int nx, int ny, double dx) {
  if (!smooth_size(nx) || !smooth_size(ny)) {
    throw std::invalid_argument(
        "Grid2D: nx, ny must be >= 8 and factor into primes <= 7");
  }
  if (!(dx > 0.0)) {
    throw std::invalid_argument("Grid2D: dx must be positive");
  }
}

}  // namespace

Grid2D Grid2D::plain(int nx, int ny, double dx) {
  validate_dims(nx, ny, dx);
  Grid2D g;
  g.nx_ = nx;
  g.ny_ = ny;
  g.dx_ = dx;
  g.active_.assign(static_cast<std::size_t>(nx) * ny, 1);
  return g;
}

Grid2D Grid2D::with_tube(int nx, int ny, double dx, Vec2 tube_center,
                         double radius_eps) {
  validate_dims(nx, ny, dx);
  if (!(radius_eps > 0.0)) {
    throw std::invalid_argument("Grid2D: tube radius must be positive");
  }
  Grid2D g;
  g.nx_ = nx;
  g.ny_ = ny;
  g.dx_ = dx;
  g.tube_center_ = tube_center;
  g.tube_radius_ = radius_eps;
  g.active_.assign(static_cast<std::size_t>(nx) * ny, 1);
  bool any_excluded = false;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double r = (g.node(i, j) - tube_center).r();
      if (r < 1e-9 * dx) {
        throw std::invalid_argument("Grid2D: tube center lies on a grid node");
      }
      if (r < radius_eps) {
        g.active_[g.index(i, j)] = 0;
        any_excluded = true;
      }
    }
  }
  if (any_excluded) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (!g.active(i, j)) continue;
        bool adjacent = false;
        for (int dj = -1; dj <= 1 && !adjacent; ++dj) {
          for (int di = -1; di <= 1 && !adjacent; ++di) {
            const int ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
            if (!g.active(ii, jj)) adjacent = true;
          }
        }
        if (adjacent) g.tube_ring_.push_back(g.index(i, j));
      }
    }
  }
  return g;
}

WaveField::WaveField(std::shared_ptr<const Grid2D> grid)
    : grid_(std::move(grid)), data_(grid_->size(), {0.0, 0.0}) {}

double WaveField::norm_squared() const {
  // accumulate per row, combine in row order: the result does not depend on
  // how the rows were scheduled across threads
  const auto& g = *grid_;
  double total = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    double row = 0.0;
    const std::complex<double>* p = data_.data() + g.index(0, j);
    for (int i = 0; i < g.nx(); ++i) row += std::norm(p[i]);
    total += row;
  }
  return total;
}

void WaveField::scale(double s) {
  for (auto& c : data_) c *= s;
}

WaveField WaveField::gaussian_packet(std::shared_ptr<const Grid2D> grid,
                                     Vec2 center, double sigma, Vec2 k) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_packet: sigma must be positive");
  }
  WaveField f(grid);
  const Grid2D& g = f.grid();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.active(i, j)) continue;
      const Vec2 p = g.node(i, j);
      const Vec2 d = p - center;
      const double env = std::exp(-d.dot(d) / (4.0 * sigma * sigma));
      // momentum phase referenced to the packet centre: two packets built at
      // mirror points then carry no spurious constant relative phase
      f.at(i, j) = std::polar(env, k.dot(d));
    }
  }
  const double n2 = f.norm_squared();
  if (!(n2 > 0.0)) {
    throw std::invalid_argument("gaussian_packet: packet has zero norm");
  }
  f.scale(1.0 / std::sqrt(n2));
  return f;
}

}  // namespace dyonlab
