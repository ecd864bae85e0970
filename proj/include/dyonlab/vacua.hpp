#pragma once

#include <complex>
#include <vector>

// Winding-basis state algebra. A further turn of the dyon around the tube
// sends |n> to |n+1>; the superposition sum_n e^{i n theta} |n> is invariant
// under that shift up to the constant factor e^{-i theta}, which makes it the
// rotation-invariant vacuum. Everything here is truncated to |n| <= M with
// explicit interior/boundary bookkeeping.

namespace dyonlab {

using Complex = std::complex<double>;

class WindingState {
 public:
  // support in [-M, M]
  explicit WindingState(int truncation_m);

  int truncation() const { return m_; }
  Complex amplitude(int n) const;
  void set_amplitude(int n, Complex c);

  // Sum over |n| <= M of |c_n|^2.
  double norm_squared() const;

  // underlying coefficients in index order n = -M..M
  const std::vector<Complex>& coefficients() const { return c_; }

 private:
  int m_;
  std::vector<Complex> c_;
};

// e^{i n theta} e^{i phi theta / (2 pi)}: the definite-winding vacuum factor,
// with phi the open-trajectory azimuth since the last full turn.
Complex dyon_state_factor(long n, double theta, double phi);

struct ThetaVacuum {
  double theta;
  WindingState state;
};

// c_n = e^{i n theta} for |n| <= M; unnormalized by default (the infinite sum
// has no norm to inherit), 1/sqrt(2M+1) on request.
ThetaVacuum build_theta_vacuum(double theta, int truncation_m,
                               bool normalized = false);

// c'_{n+1} = c_n. The top amplitude c_M leaves the truncation window; its
// squared modulus is reported through *boundary_loss when non-null.
WindingState winding_shift(const WindingState& s,
                           double* boundary_loss = nullptr);

// sum_n conj(a_n) b_n over the common window
Complex overlap(const WindingState& a, const WindingState& b);

// max over interior n in [-M+1, M-1] of |shift(v)_n - e^{-i theta} v_n|.
// Pure round-off for an exact theta-vacuum: the shift acts as multiplication
// by e^{-i theta} away from the truncation boundary.
double eigenvalue_residual(const ThetaVacuum& v);

}  // namespace dyonlab
