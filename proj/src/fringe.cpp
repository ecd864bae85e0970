#include "dyonlab/fringe.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "dyonlab/charges.hpp"

namespace dyonlab {

namespace {

using Cplx = std::complex<double>;

constexpr double kGlX[4] = {0.1834346424956498, 0.5255324099163290,
                            0.7966664774136267, 0.9602898564975363};
constexpr double kGlW[4] = {0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

// cylindrical-wave aperture integral over one slit, composite GL-8
Cplx slit_amplitude(double x, double slit_center, double w, double k,
                    double L) {
  Cplx acc{0.0, 0.0};
  const int panels = 4;
  for (int p = 0; p < panels; ++p) {
    const double lo = slit_center - 0.5 * w + w * p / panels;
    const double hi = lo + w / panels;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int q = 0; q < 4; ++q) {
      for (double s : {mid - half * kGlX[q], mid + half * kGlX[q]}) {
        const double r = std::hypot(L, x - s);
        acc += kGlW[q] * half * std::polar(1.0 / std::sqrt(r), k * r);
      }
    }
  }
  return acc;
}

}  // namespace

FringePattern fringe_shift(const SlitGeometry& geom, double theta,
                           int screen_samples) {
  const double L = geom.screen_distance;
  const double d = geom.slit_separation;
  const double w = geom.slit_width;
  const double lambda = geom.wavelength;
  if (!(d > 0.0) || !(w > 0.0) || !(lambda > 0.0) || !(w < d)) {
    throw std::domain_error("fringe_shift: need 0 < w < d and lambda > 0");
  }
  if (!(L >= 20.0 * d)) {
    throw std::domain_error(
        "fringe_shift: far-field geometry requires L >= 20 d");
  }
  if (screen_samples < 256) {
    throw std::domain_error("fringe_shift: need at least 256 screen samples");
  }

  const double period = L * lambda / d;
  const double k = kTwoPi / lambda;
  const double slit_phase = kTwoPi * geom.delta0_bar + theta;
  const Cplx right_factor = std::polar(1.0, slit_phase);

  FringePattern out;
  out.period = period;
  out.x.resize(screen_samples);
  out.intensity.resize(screen_samples);

  const double half_span = 2.5 * period;
  for (int i = 0; i < screen_samples; ++i) {
    const double x = -half_span + 2.0 * half_span * i / (screen_samples - 1);
    const Cplx a = slit_amplitude(x, -0.5 * d, w, k, L) +
                   right_factor * slit_amplitude(x, +0.5 * d, w, k, L);
    out.x[i] = x;
    out.intensity[i] = std::norm(a);
  }

  // phase of the fundamental fringe frequency; the Hann window keeps the
  // (even) single-slit envelope from leaking into it
  Cplx g{0.0, 0.0};
  for (int i = 0; i < screen_samples; ++i) {
    const double win =
        0.5 * (1.0 + std::cos(std::numbers::pi * out.x[i] / half_span));
    g += win * out.intensity[i] * std::polar(1.0, -kTwoPi * out.x[i] / period);
  }
  // I(x) ~ env(x) [1 + V cos(2 pi (x - dx)/P)] puts e^{-i 2 pi dx / P} at the
  // fundamental, so the shift is -arg(g) P / (2 pi)
  out.phase = -std::arg(g);
  if (out.phase < 0.0) out.phase += kTwoPi;
  double shift = -std::arg(g) / kTwoPi * period;
  // principal representative in (-P/2, P/2]
  if (shift <= -0.5 * period) shift += period;
  out.delta_x = shift;
  return out;
}

double fringe_distance(double a, double b, double period) {
  double r = std::fmod(std::abs(a - b), period);
  return std::min(r, period - r);
}

}  // namespace dyonlab
