#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "dyonlab/gauge.hpp"

namespace dyonlab {

// Uniform 2D node grid with an optional excluded disc around the tube
// centre. Node (i, j) sits at (i*dx, j*dx); excluded nodes are hard-wall
// (psi pinned to zero). nx, ny must factor into primes <= 7.
class Grid2D {
 public:
  static Grid2D plain(int nx, int ny, double dx);
  // tube_center must not coincide with a grid node.
  static Grid2D with_tube(int nx, int ny, double dx, Vec2 tube_center,
                          double radius_eps);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return dx_; }
  Vec2 tube_center() const { return tube_center_; }
  double tube_radius() const { return tube_radius_; }
  bool has_tube() const { return tube_radius_ > 0.0; }

  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  bool active(int i, int j) const { return active_[index(i, j)] != 0; }
  const std::vector<std::uint8_t>& active_mask() const { return active_; }

  Vec2 node(int i, int j) const { return {i * dx_, j * dx_}; }

  // indices of active nodes 8-adjacent to an excluded node (the tube's
  // contact ring; empty without a tube)
  const std::vector<std::size_t>& tube_ring() const { return tube_ring_; }

 private:
  Grid2D() = default;
  int nx_ = 0, ny_ = 0;
  double dx_ = 1.0;
  Vec2 tube_center_{};
  double tube_radius_ = 0.0;
  std::vector<std::uint8_t> active_;
  std::vector<std::size_t> tube_ring_;
};

// Complex amplitude per grid node.
class WaveField {
 public:
  explicit WaveField(std::shared_ptr<const Grid2D> grid);

  const Grid2D& grid() const { return *grid_; }
  std::shared_ptr<const Grid2D> grid_ptr() const { return grid_; }

  std::complex<double>& at(int i, int j) { return data_[grid_->index(i, j)]; }
  std::complex<double> at(int i, int j) const {
    return data_[grid_->index(i, j)];
  }
  std::vector<std::complex<double>>& data() { return data_; }
  const std::vector<std::complex<double>>& data() const { return data_; }

  double norm_squared() const;
  void scale(double s);

  // Gaussian packet exp(-|p-center|^2/(4 sigma^2)) exp(i k.p), zeroed on
  // excluded nodes and normalized to unit norm.
  static WaveField gaussian_packet(std::shared_ptr<const Grid2D> grid,
                                   Vec2 center, double sigma, Vec2 k);

 private:
  std::shared_ptr<const Grid2D> grid_;
  std::vector<std::complex<double>> data_;
};

}  // namespace dyonlab
