#include "dyonlab/vacua.hpp"

#include <cmath>
#include <stdexcept>

#include "dyonlab/charges.hpp"

namespace dyonlab {

WindingState::WindingState(int truncation_m) : m_(truncation_m) {
  if (m_ < 1) {
    throw std::domain_error("WindingState: truncation M must be >= 1");
  }
  c_.assign(2 * static_cast<std::size_t>(m_) + 1, Complex{0.0, 0.0});
}

Complex WindingState::amplitude(int n) const {
  if (n < -m_ || n > m_) return Complex{0.0, 0.0};
  return c_[static_cast<std::size_t>(n + m_)];
}

void WindingState::set_amplitude(int n, Complex c) {
  if (n < -m_ || n > m_) {
    throw std::out_of_range("WindingState: index outside truncation window");
  }
  c_[static_cast<std::size_t>(n + m_)] = c;
}

double WindingState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : c_) s += std::norm(c);
  return s;
}

namespace {

// e^{i n theta} with the angle reduced mod 2 pi in extended precision; a
// plain double product n * theta loses absolute precision by |n theta| eps,
// which is visible at truncations of 10^4
Complex unit_phase(long n, double theta) {
  constexpr long double two_pi_l = 6.283185307179586476925286766559L;
  const long double arg =
      std::fmod(static_cast<long double>(n) * static_cast<long double>(theta),
                two_pi_l);
  return std::polar(1.0, static_cast<double>(arg));
}

}  // namespace

Complex dyon_state_factor(long n, double theta, double phi) {
  return unit_phase(n, theta) * std::polar(1.0, phi * theta / kTwoPi);
}

ThetaVacuum build_theta_vacuum(double theta, int truncation_m,
                               bool normalized) {
  WindingState s(truncation_m);
  const double scale =
      normalized ? 1.0 / std::sqrt(2.0 * truncation_m + 1.0) : 1.0;
  for (int n = -truncation_m; n <= truncation_m; ++n) {
    s.set_amplitude(n, scale * unit_phase(n, theta));
  }
  return ThetaVacuum{theta, std::move(s)};
}

WindingState winding_shift(const WindingState& s, double* boundary_loss) {
  const int m = s.truncation();
  WindingState out(m);
  for (int n = -m + 1; n <= m; ++n) {
    out.set_amplitude(n, s.amplitude(n - 1));
  }
  if (boundary_loss != nullptr) {
    *boundary_loss = std::norm(s.amplitude(m));
  }
  return out;
}

Complex overlap(const WindingState& a, const WindingState& b) {
  const int m = std::min(a.truncation(), b.truncation());
  Complex acc{0.0, 0.0};
  for (int n = -m; n <= m; ++n) {
    acc += std::conj(a.amplitude(n)) * b.amplitude(n);
  }
  return acc;
}

double eigenvalue_residual(const ThetaVacuum& v) {
  const int m = v.state.truncation();
  if (m < 2) {
    throw std::domain_error("eigenvalue_residual: need truncation M >= 2");
  }
  const WindingState shifted = winding_shift(v.state);
  const Complex eig = std::polar(1.0, -v.theta);
  double worst = 0.0;
  for (int n = -m + 1; n <= m - 1; ++n) {
    worst = std::max(worst,
                     std::abs(shifted.amplitude(n) - eig * v.state.amplitude(n)));
  }
  return worst;
}

}  // namespace dyonlab
