#include "dyonlab/scattering.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dyonlab/charges.hpp"

namespace dyonlab {

namespace {

using Cplx = std::complex<double>;

void validate_angle(double phi, double cutoff) {
  if (!(phi > cutoff) || !(phi < kTwoPi - cutoff)) {
    throw std::domain_error(
        "scattering: phi = " + std::to_string(phi) +
        " is inside the forward cutoff; the 1/sin^2(phi/2) pole diverges "
        "toward phi = 0 mod 2 pi");
  }
}

void validate_k(double k) {
  if (!(k > 0.0)) {
    throw std::domain_error("scattering: wave number k must be positive");
  }
}

// sum_{|m| <= M} (e^{2 i delta_m} - 1) t^{|m|} e^{i m phi} with
// delta_m = (pi/2)(|m| - |m - alpha|); for alpha in [0, 1) the coefficient is
// e^{i pi alpha} - 1 for m >= 1 and e^{-i pi alpha} - 1 for m <= 0.
Cplx abel_sum(double alpha, double phi, double t, int m_max) {
  const Cplx coef_pos = std::polar(1.0, std::numbers::pi * alpha) - 1.0;
  const Cplx coef_neg = std::polar(1.0, -std::numbers::pi * alpha) - 1.0;
  const Cplx zp = t * std::polar(1.0, phi);
  const Cplx zm = t * std::polar(1.0, -phi);
  Cplx sum = coef_neg;  // m = 0 term
  Cplx pp{1.0, 0.0}, pm{1.0, 0.0};
  for (int m = 1; m <= m_max; ++m) {
    pp *= zp;
    pm *= zm;
    sum += coef_pos * pp + coef_neg * pm;
  }
  return sum;
}

// symmetric partial sums T_M smoothed by two rounds of running means
// (Holder H2); the raw T_M oscillate and do not settle
Cplx cesaro_sum(double alpha, double phi, int m_max) {
  const Cplx coef_pos = std::polar(1.0, std::numbers::pi * alpha) - 1.0;
  const Cplx coef_neg = std::polar(1.0, -std::numbers::pi * alpha) - 1.0;
  const Cplx zp = std::polar(1.0, phi);
  const Cplx zm = std::polar(1.0, -phi);
  Cplx partial = coef_neg;
  Cplx pp{1.0, 0.0}, pm{1.0, 0.0};
  Cplx mean1 = partial;
  Cplx mean2 = partial;
  for (int m = 1; m <= m_max; ++m) {
    pp *= zp;
    pm *= zm;
    partial += coef_pos * pp + coef_neg * pm;
    mean1 += (partial - mean1) / static_cast<double>(m + 1);
    mean2 += (mean1 - mean2) / static_cast<double>(m + 1);
  }
  return mean2;
}

}  // namespace

double theta_cross_section(double theta, double k, double phi,
                           double forward_cutoff) {
  validate_k(k);
  validate_angle(phi, forward_cutoff);
  const double num = std::sin(0.5 * theta);
  const double den = std::sin(0.5 * phi);
  return num * num / (kTwoPi * k * den * den);
}

double ab_cross_section(double alpha_eff, double k, double phi,
                        double forward_cutoff) {
  return theta_cross_section(kTwoPi * alpha_eff, k, phi, forward_cutoff);
}

PartialWaveResult partial_wave_cross_section(double alpha_eff, double k,
                                             double phi, int m_max,
                                             Regularization reg,
                                             double forward_cutoff) {
  validate_k(k);
  validate_angle(phi, forward_cutoff);
  if (m_max < 100) {
    throw std::domain_error("partial_wave_cross_section: m_max must be >= 100");
  }

  PartialWaveResult res;
  res.alpha_integer = static_cast<long>(std::floor(alpha_eff));
  res.alpha_reduced = alpha_eff - static_cast<double>(res.alpha_integer);

  Cplx s;
  if (reg == Regularization::abel) {
    // Abel nodes tied to the truncation so the t^|m| tail beyond m_max stays
    // negligible while quadratic extrapolation in (1 - t) reaches t = 1
    const double a = 4.0 / m_max;
    const Cplx s1 = abel_sum(res.alpha_reduced, phi, 1.0 - 3.0 * a, m_max);
    const Cplx s2 = abel_sum(res.alpha_reduced, phi, 1.0 - 4.0 * a, m_max);
    const Cplx s3 = abel_sum(res.alpha_reduced, phi, 1.0 - 5.0 * a, m_max);
    const Cplx s4 = abel_sum(res.alpha_reduced, phi, 1.0 - 6.0 * a, m_max);
    // quadratic Lagrange extrapolation of (1-t) = {3,4,5}a to zero, with the
    // {4,5,6}a extrapolation as residual estimate
    s = 10.0 * s1 - 15.0 * s2 + 6.0 * s3;
    const Cplx s_alt = 15.0 * s2 - 24.0 * s3 + 10.0 * s4;
    const double coef_mag =
        2.0 * std::abs(std::sin(0.5 * std::numbers::pi * res.alpha_reduced));
    const double truncation =
        2.0 * coef_mag * std::pow(1.0 - 3.0 * a, m_max + 1) /
        std::abs(1.0 - (1.0 - 3.0 * a) * std::polar(1.0, phi));
    res.tail_estimate = std::abs(s - s_alt) + truncation;
  } else {
    // H2 error falls off as 1/M^2, so the full-vs-half gap is about three
    // times the residual at full truncation
    const Cplx s_full = cesaro_sum(res.alpha_reduced, phi, m_max);
    const Cplx s_half = cesaro_sum(res.alpha_reduced, phi, m_max / 2);
    s = s_full;
    res.tail_estimate = std::abs(s_full - s_half) / 3.0;
  }

  if (res.tail_estimate > 2e-3 * std::abs(s) + 1e-12) {
    throw std::runtime_error(
        "partial_wave_cross_section: regularized sum did not converge "
        "(tail estimate " +
        std::to_string(res.tail_estimate) + " vs |S| " +
        std::to_string(std::abs(s)) + "); raise m_max");
  }
  res.value = std::norm(s) / (kTwoPi * k);
  return res;
}

std::vector<PartialWaveResult> partial_wave_profile(
    double alpha_eff, double k, std::span<const double> phis, int m_max,
    Regularization reg, AnglePolicy policy, double forward_cutoff) {
  std::vector<PartialWaveResult> out(phis.size());
  if (policy == AnglePolicy::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t i = 0; i < phis.size(); ++i) {
      out[i] = partial_wave_cross_section(alpha_eff, k, phis[i], m_max, reg,
                                          forward_cutoff);
    }
  } else {
    for (std::size_t i = 0; i < phis.size(); ++i) {
      out[i] = partial_wave_cross_section(alpha_eff, k, phis[i], m_max, reg,
                                          forward_cutoff);
    }
  }
  return out;
}

}  // namespace dyonlab
